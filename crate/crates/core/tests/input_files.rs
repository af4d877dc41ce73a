//! Round trips between built-in models and the input format.

use std::fmt::Write as _;

use hhloop::barcobar::{cobar_of_bar, shuffle_words, CobarBar};
use hhloop::builtins;
use hhloop::dga::{Dga, NcPoly};
use hhloop::input::parse_input;
use hhloop::shcmodel::mu0_from_shuffles;

fn poly_text(p: &NcPoly) -> String {
    let terms: Vec<String> = p
        .terms()
        .map(|(w, c)| {
            let word: Vec<String> = w.iter().map(|g| format!("g{g}")).collect();
            format!("{c}*{}", word.join("."))
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// The cobar model as an input file, with `H⁺BA` products as plain shuffles
/// of bar words, without the sign of `μ0`.
fn model_file(alg: &Dga, cobar: &CobarBar) -> String {
    let model = cobar.model();
    let gens = model.generators();
    let mut s = String::new();
    writeln!(s, "FIELD {}\nMODEL MINIMAL\nTRUNCATE {}", alg.field().p(), model.max_degree()).unwrap();
    for g in 0..gens.len() as u32 {
        writeln!(s, "GENERATOR g{g} {}", gens.degree(g)).unwrap();
    }
    for g in 0..gens.len() as u32 {
        if !model.diff(g).is_zero() {
            writeln!(s, "DIFF g{g} = {}", poly_text(model.diff(g))).unwrap();
        }
    }
    let f = alg.field();
    for v in 0..gens.len() as u32 {
        for w in 0..gens.len() as u32 {
            let mut p = NcPoly::zero();
            shuffle_words(alg, cobar.word(v), cobar.word(w), |word, odd| {
                if let Some(g) = (0..gens.len() as u32).find(|&g| cobar.word(g) == word) {
                    p.add_term(f, vec![g], f.sign(odd));
                }
            });
            if !p.is_zero() {
                writeln!(s, "HSTAR_BA_PRODUCT g{v} g{w} = {}", poly_text(&p)).unwrap();
            }
        }
    }
    s
}

#[test]
fn bar_products_give_the_shuffle_linear_part() {
    let cases = [
        builtins::sphere(3, 1, 8).unwrap(),
        builtins::sphere(5, 2, 12).unwrap(),
        builtins::exterior(5, 3, 10).unwrap(),
        builtins::exterior(3, 3, 10).unwrap(),
    ];
    for alg in &cases {
        let top = alg.max_degree();
        let cobar = cobar_of_bar(alg, top).unwrap();
        let expected = mu0_from_shuffles(alg, &cobar).unwrap();
        let text = model_file(alg, &cobar);
        let input = parse_input(&text).unwrap();
        let model = input.free_model(top).unwrap();
        assert_eq!(model.differential(), cobar.model().differential());
        let mu0 = input.mu0(&model).unwrap().unwrap();
        assert_eq!(mu0, expected, "{text}");
    }
}

#[test]
fn commutative_and_finite_inputs_agree() {
    let a = parse_input("FIELD 3\nGENERATOR x 4\nRELATION x.x\n").unwrap().algebra(14).unwrap();
    let b = parse_input("FIELD 3\nBASIS 4 x\n").unwrap().algebra(14).unwrap();
    let c = builtins::sphere(3, 2, 14).unwrap();
    for other in [&b, &c] {
        assert_eq!(a.dims(), other.dims());
        assert_eq!(a.mul(1, 1), other.mul(1, 1));
    }
}
