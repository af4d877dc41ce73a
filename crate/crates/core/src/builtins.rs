//! Built-in fixtures: spheres, complex projective spaces, and the free
//! models of `ΣCP²` and `G₂`.

use std::collections::HashMap;

use crate::barcobar::{cobar_of_bar, FreeDgaModel};
use crate::dga::{CPoly, CommutativePresentation, Dga, Generators, NcPoly};
use crate::shcmodel::Mu0;
use crate::error::{Error, Result};
use crate::ffla::Fp;

/// `H*(S^{2n}) = F_p[x]/x²` with `|x| = 2n`, truncated at `top`.
pub fn sphere(p: u32, n: usize, top: usize) -> Result<Dga> {
    if n == 0 {
        return Err(Error::Invalid("sphere needs n >= 1".into()));
    }
    let mut c = CommutativePresentation::new();
    let x = c.generator("x", 2 * n);
    c.add_relation(CPoly::from([(c.monomial(&[(x, 2)]), 1)]));
    c.expand(Fp::new(p)?, top)
}

/// The commutative model `Λ(x, y)`, `|x| = 2`, `|y| = 2n + 1`, `dy = x^{n+1}`
/// of `CP(n)`, truncated at `top`.
pub fn cpn(p: u32, n: usize, top: usize) -> Result<Dga> {
    if n == 0 {
        return Err(Error::Invalid("cpn needs n >= 1".into()));
    }
    let field = Fp::new(p)?;
    let mut c = CommutativePresentation::new();
    let x = c.generator("x", 2);
    let y = c.generator("y", 2 * n + 1);
    c.set_diff(y, CPoly::from([(c.monomial(&[(x, n as u32 + 1)]), 1)]));
    // exterior on y also in characteristic 2
    c.odd_squares_vanish = true;
    c.expand(field, top)
}

/// The exterior algebra `Λ(v)` on one odd class of degree `d`.
pub fn exterior(p: u32, d: usize, top: usize) -> Result<Dga> {
    if d % 2 == 0 || d < 3 {
        return Err(Error::Invalid("exterior generator must have odd degree >= 3".into()));
    }
    let mut c = CommutativePresentation::new();
    c.generator(&format!("v{d}"), d);
    c.odd_squares_vanish = true;
    c.expand(Fp::new(p)?, top)
}

/// `H*(ΣCP²; F_2)`: classes in degrees 3 and 5 with trivial products.
pub fn sigma_cp2_cohomology(top: usize) -> Result<Dga> {
    let f = Fp::new(2)?;
    let basis = vec![("1".to_string(), 0), ("a3".to_string(), 3), ("b5".to_string(), 5)];
    let basis: Vec<_> = basis.into_iter().filter(|(_, d)| *d <= top).collect();
    let n = basis.len();
    Dga::new(f, top, basis, Default::default(), vec![Default::default(); n])
}

/// The minimal model `(TV, d)` of `ΣCP²` over `F_2`, `V = s^{-1}T⁺(a2, b4)`,
/// with `μ0` dual to the coproduct `Δb4 = b4⊗1 + a2⊗a2 + 1⊗b4` of
/// `H_*(ΩΣCP²) = T(a2, b4)`. Generators for `a2` and `b4` are `x3` and `x5`,
/// longer words `w` give `x{deg}_w`.
pub fn sigma_cp2(top: usize) -> Result<(FreeDgaModel, Mu0)> {
    let alg = sigma_cp2_cohomology(top)?;
    let cobar = cobar_of_bar(&alg, top)?;
    let model = cobar.model();
    let f = alg.field();
    let letter = |l: u32| if l == 1 { 'a' } else { 'b' };
    let spell = |g: u32| cobar.word(g).iter().map(|&l| letter(l)).collect::<String>();
    let mut gens = Generators::new();
    for g in 0..model.len() as u32 {
        let d = model.generators().degree(g);
        let name = match spell(g).as_str() {
            "a" => "x3".to_string(),
            "b" => "x5".to_string(),
            w => format!("x{d}_{w}"),
        };
        gens.push(name, d);
    }
    let renamed = FreeDgaModel::new(f, gens, model.differential().to_vec(), top)?;

    let by_word: HashMap<String, u32> = (0..model.len() as u32).map(|g| (spell(g), g)).collect();
    let mut mu0 = Mu0::new();
    for z in 0..model.len() as u32 {
        for (u, w) in coproduct(&spell(z)) {
            if u.is_empty() || w.is_empty() {
                continue;
            }
            let (gu, gw) = (by_word[&u], by_word[&w]);
            mu0.entry((gu, gw)).or_insert_with(NcPoly::zero).add_term(f, vec![z], 1);
        }
    }
    mu0.retain(|_, p| !p.is_zero());
    Ok((renamed, mu0))
}

/// `Δ` of a word in `T(a, b)` over `F_2`, as a list of terms (repeated terms
/// cancel in pairs when used as coefficients).
fn coproduct(word: &str) -> Vec<(String, String)> {
    let mut terms = vec![(String::new(), String::new())];
    for c in word.chars() {
        let parts: &[(&str, &str)] = match c {
            'a' => &[("a", ""), ("", "a")],
            _ => &[("b", ""), ("a", "a"), ("", "b")],
        };
        terms = terms
            .iter()
            .flat_map(|(l, r)| parts.iter().map(move |(x, y)| (format!("{l}{x}"), format!("{r}{y}"))))
            .collect();
    }
    terms
}

/// The minimal model of `G₂` over `F_5` through degree 12: `x3, x5, x7, x9,
/// x11, y11` with `dx5 = x3²`, `dx7 = [x3, x5]`, `dx9 = [x3, x7] + x5²`,
/// `dx11 = [x3, x9] + [x5, x7]`, and `μ0(x_{2i+1} # x_{2j+1})` equal to
/// `C(i+j, i) x_{2(i+j)+1}` for `i + j <= 4` and `(4!/(i! j!)) ε y11` for
/// `i + j = 5`, so that `μ0(x3#x3) = 2x5`, `μ0(x3#x5) = 3x7`, `μ0(x3#x7) = 4x9`
/// and `μ0(x3#x9) = ε y11`.
pub fn g2(epsilon: u32, top: usize) -> Result<(FreeDgaModel, Mu0)> {
    let f = Fp::new(5)?;
    if epsilon % 5 == 0 {
        return Err(Error::Invalid("epsilon must be nonzero mod 5".into()));
    }
    let mut gens = Generators::new();
    let mut xs = Vec::new();
    for d in [3, 5, 7, 9, 11] {
        if d <= top {
            xs.push(gens.push(format!("x{d}"), d));
        }
    }
    let y11 = (top >= 11).then(|| gens.push("y11", 11));
    let commutator = |i: usize, j: usize| {
        let mut p = NcPoly::word(vec![xs[i], xs[j]]);
        p.add_term(f, vec![xs[j], xs[i]], 1);
        p
    };
    let mut diff = vec![NcPoly::zero(); gens.len()];
    let square = |i: usize| NcPoly::word(vec![xs[i], xs[i]]);
    for (k, &g) in xs.iter().enumerate() {
        diff[g as usize] = match k {
            1 => square(0),
            2 => commutator(0, 1),
            3 => {
                let mut p = commutator(0, 2);
                p.add_scaled(f, &square(1), 1);
                p
            }
            4 => {
                let mut p = commutator(0, 3);
                p.add_scaled(f, &commutator(1, 2), 1);
                p
            }
            _ => NcPoly::zero(),
        };
    }
    let model = FreeDgaModel::new(f, gens, diff, top)?;
    let fact = [1u32, 1, 2, 6, 24, 120];
    let mut mu0 = Mu0::new();
    for i in 1..=xs.len() {
        for j in 1..=xs.len() {
            let value = if i + j <= 4 && i + j <= xs.len() {
                let c = fact[i + j] / (fact[i] * fact[j]);
                NcPoly::word(vec![xs[i + j - 1]]).scale(f, c % 5)
            } else if i + j == 5 {
                match y11 {
                    Some(y) => NcPoly::word(vec![y]).scale(f, f.mul(fact[4] / (fact[i] * fact[j]) % 5, epsilon % 5)),
                    None => continue,
                }
            } else {
                continue;
            };
            if !value.is_zero() {
                mu0.insert((xs[i - 1], xs[j - 1]), value);
            }
        }
    }
    Ok((model, mu0))
}
