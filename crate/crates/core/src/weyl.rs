//! The Weyl-algebra Hopf algebroid `K[X, Y] ⋈ K[Z]` by exact PBW rewriting.
//!
//! A monomial key `(n, m, k)` is the bowtie basis element `Xⁿ ⊗ Ȳᵐ ⋈ Zᵏ`, which as a product of
//! generators is `Xⁿ Zᵏ Yᵐ` (`X = s(X)`, `Y = t(X)`). Normal order is `X < Z < Y`, reached by
//! `ZX → XZ + 1`, `YZ → ZY − 1`, `YX → XY`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{render, Scalar};
use crate::report::Report;

/// `(n, m, k)` meaning `Xⁿ Zᵏ Yᵐ`.
pub type Monomial = (u32, u32, u32);

fn falling(a: u32, j: u32) -> BigInt {
    (0..j).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i))
}

fn choose(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    falling(n, k) / falling(k, k)
}

/// Binomial coefficient as a scalar.
pub fn binomial(k: u32, p: u32) -> Scalar {
    Scalar::from_integer(choose(k, p))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PBWElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl PBWElement {
    pub fn zero() -> Self {
        PBWElement::default()
    }

    pub fn one() -> Self {
        PBWElement::monomial(0, 0, 0)
    }

    pub fn monomial(n: u32, m: u32, k: u32) -> Self {
        PBWElement::term((n, m, k), Scalar::one())
    }

    pub fn term(mono: Monomial, c: Scalar) -> Self {
        let mut e = PBWElement::zero();
        e.add_term(mono, c);
        e
    }

    pub fn x() -> Self {
        PBWElement::monomial(1, 0, 0)
    }

    pub fn y() -> Self {
        PBWElement::monomial(0, 1, 0)
    }

    pub fn z() -> Self {
        PBWElement::monomial(0, 0, 1)
    }

    pub fn add_term(&mut self, mono: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mono).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, mono: Monomial) -> Scalar {
        self.terms.get(&mono).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PBWElement) -> PBWElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> PBWElement {
        let mut out = PBWElement::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    pub fn mul(&self, other: &PBWElement) -> PBWElement {
        pbw_mul(self, other)
    }

    pub fn pow(&self, e: u32) -> PBWElement {
        (0..e).fold(PBWElement::one(), |acc, _| acc.mul(self))
    }

    /// Largest `n + m + k` in the support.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(n, m, k)| n + m + k).max().unwrap_or(0)
    }

    /// Polynomials in `X` alone (the base `A = K[X]` embedded by the source).
    pub fn is_source_polynomial(&self) -> bool {
        self.terms.keys().all(|(_, m, k)| *m == 0 && *k == 0)
    }

    /// Replaces `X` by `Y` in a polynomial in `X` (the target map on `A`).
    pub fn to_target(&self) -> PBWElement {
        let mut out = PBWElement::zero();
        for ((n, m, k), c) in &self.terms {
            debug_assert!(*m == 0 && *k == 0);
            out.add_term((0, *n, 0), c.clone());
        }
        out
    }
}

fn render_monomial(&(n, m, k): &Monomial) -> String {
    let mut s = String::new();
    for (g, e) in [('X', n), ('Z', k), ('Y', m)] {
        match e {
            0 => {}
            1 => s.push(g),
            _ => s.push_str(&format!("{g}^{e}")),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

fn render_terms<K>(terms: &BTreeMap<K, Scalar>, f: impl Fn(&K) -> String) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (key, c)) in terms.iter().rev().enumerate() {
        let (neg, abs) = (c.is_negative(), c.abs());
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let body = f(key);
        if abs.is_one() {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&render(&abs));
        } else {
            out.push_str(&format!("{}·{body}", render(&abs)));
        }
    }
    out
}

impl fmt::Display for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(&self.terms, render_monomial))
    }
}

/// Normal form of `XᵃZᵇYᶜ · XᵈZᵉYᶠ`: `Zᵇ Xᵈ = Σ_i C(b,i) d^(i) X^{d−i} Z^{b−i}` and
/// `Yᶜ Zᵉ = Σ_j C(c,j) e^(j) (−1)ʲ Z^{e−j} Y^{c−j}`, with `Y` and `X` commuting.
fn mul_monomials(u: Monomial, v: Monomial, out: &mut PBWElement, c: &Scalar) {
    let ((a, c_y, b), (d, f, e)) = (u, v);
    for i in 0..=b.min(d) {
        let ci = choose(b, i) * falling(d, i);
        for j in 0..=c_y.min(e) {
            let mut cj = choose(c_y, j) * falling(e, j);
            if j % 2 == 1 {
                cj = -cj;
            }
            let coef = Scalar::from_integer(&ci * cj) * c;
            out.add_term((a + d - i, c_y - j + f, b - i + e - j), coef);
        }
    }
}

/// Product in PBW normal form. Exact; the support stays finite.
pub fn pbw_mul(u: &PBWElement, v: &PBWElement) -> PBWElement {
    let mut out = PBWElement::zero();
    for (mu, cu) in &u.terms {
        for (mv, cv) in &v.terms {
            mul_monomials(*mu, *mv, &mut out, &(cu * cv));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X,
    Z,
    Y,
}

/// The word `XⁿZᵏYᵐ` of a monomial.
pub fn monomial_word(&(n, m, k): &Monomial) -> Vec<Gen> {
    let mut w = vec![Gen::X; n as usize];
    w.extend(std::iter::repeat_n(Gen::Z, k as usize));
    w.extend(std::iter::repeat_n(Gen::Y, m as usize));
    w
}

/// Normalizes a word in the generators by applying the rewriting rules one adjacent pair
/// at a time until no inversion remains.
pub fn rewrite_word(word: &[Gen]) -> PBWElement {
    let mut out = PBWElement::zero();
    let mut queue = VecDeque::from([(word.to_vec(), Scalar::one())]);
    while let Some((w, c)) = queue.pop_front() {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            let n = w.iter().filter(|g| **g == Gen::X).count() as u32;
            let k = w.iter().filter(|g| **g == Gen::Z).count() as u32;
            let m = w.iter().filter(|g| **g == Gen::Y).count() as u32;
            out.add_term((n, m, k), c);
            continue;
        };
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        let correction = match (w[i], w[i + 1]) {
            (Gen::Z, Gen::X) => Some(Scalar::one()),
            (Gen::Y, Gen::Z) => Some(-Scalar::one()),
            _ => None,
        };
        if let Some(s) = correction {
            let mut shorter = w[..i].to_vec();
            shorter.extend_from_slice(&w[i + 2..]);
            queue.push_back((shorter, &c * s));
        }
        queue.push_back((swapped, c));
    }
    out
}

/// Right leg of a normalized tensor: `(m, q)` meaning `Z^q Y^m`.
pub type RightKey = (u32, u32);

/// Elements of `W ⊗_A W` in the normal form where the right leg is free of `X`
/// (`x ⊗ s(a) y = t(a) x ⊗ y` moves every `X` on the right to a `Y` on the left).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PBWTensor {
    terms: BTreeMap<(Monomial, RightKey), Scalar>,
}

impl PBWTensor {
    pub fn zero() -> Self {
        PBWTensor::default()
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, RightKey), Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, left: Monomial, right: RightKey) -> Scalar {
        self.terms.get(&(left, right)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_normal(&mut self, left: Monomial, right: RightKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((left, right)).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(left, right));
        }
    }

    /// Adds `c · x ⊗ y` for arbitrary `x` and `y`, normalizing.
    pub fn add_product(&mut self, x: &PBWElement, y: &PBWElement, c: &Scalar) {
        for ((a, m, q), cy) in &y.terms {
            let moved = if *a == 0 { x.clone() } else { pbw_mul(&PBWElement::monomial(0, *a, 0), x) };
            for (l, cx) in &moved.terms {
                self.add_normal(*l, (*m, *q), cx * cy * c);
            }
        }
    }

    pub fn simple(x: &PBWElement, y: &PBWElement) -> PBWTensor {
        let mut t = PBWTensor::zero();
        t.add_product(x, y, &Scalar::one());
        t
    }

    /// Factorwise product, meaningful on the Takeuchi subspace.
    pub fn mul(&self, other: &PBWTensor) -> PBWTensor {
        let mut out = PBWTensor::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                let x = pbw_mul(&PBWElement::term(*l1, Scalar::one()), &PBWElement::monomial(l2.0, l2.1, l2.2));
                let y = pbw_mul(&right_element(*r1), &right_element(*r2));
                out.add_product(&x, &y, &(c1 * c2));
            }
        }
        out
    }

    /// `x ⊗ y ↦ x ⊗ y z`.
    pub fn mul_right_leg(&self, z: &PBWElement) -> PBWTensor {
        let mut out = PBWTensor::zero();
        for ((l, r), c) in &self.terms {
            out.add_product(&PBWElement::term(*l, Scalar::one()), &pbw_mul(&right_element(*r), z), c);
        }
        out
    }

    /// `x ⊗ y ↦ x z ⊗ y`.
    pub fn mul_left_leg(&self, z: &PBWElement) -> PBWTensor {
        let mut out = PBWTensor::zero();
        for ((l, r), c) in &self.terms {
            out.add_product(&pbw_mul(&PBWElement::term(*l, Scalar::one()), z), &right_element(*r), c);
        }
        out
    }

    pub fn add(&self, other: &PBWTensor) -> PBWTensor {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_normal(*l, *r, c.clone());
        }
        out
    }
}

fn right_element((m, q): RightKey) -> PBWElement {
    PBWElement::monomial(0, m, q)
}

impl fmt::Display for PBWTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(&self.terms, |(l, (m, q))| {
            format!("{}⊗{}", render_monomial(l), render_monomial(&(0, *m, *q)))
        }))
    }
}

/// The structure maps of the Weyl algebroid with a pluggable binomial (for mutation tests).
#[derive(Clone, Copy)]
pub struct WeylAlgebroid {
    pub binomial: fn(u32, u32) -> Scalar,
}

impl Default for WeylAlgebroid {
    fn default() -> Self {
        WeylAlgebroid { binomial }
    }
}

impl WeylAlgebroid {
    /// `Δ(XⁿZᵏYᵐ) = Σ_{p+q=k} C(k,p) XⁿZᵖ ⊗_A Z^q Yᵐ`.
    pub fn coproduct(&self, u: &PBWElement) -> PBWTensor {
        let mut out = PBWTensor::zero();
        for ((n, m, k), c) in &u.terms {
            for p in 0..=*k {
                out.add_normal((*n, 0, p), (*m, k - p), (self.binomial)(*k, p) * c);
            }
        }
        out
    }

    /// `ε(XⁿZᵏYᵐ) = m!/(m−k)! X^{n+m−k}` for `m ≥ k`, else 0.
    pub fn counit(&self, u: &PBWElement) -> PBWElement {
        let mut out = PBWElement::zero();
        for ((n, m, k), c) in &u.terms {
            if m >= k {
                out.add_term((n + m - k, 0, 0), Scalar::from_integer(falling(*m, *k)) * c);
            }
        }
        out
    }

    /// `τ(XⁿZᵏYᵐ) = (−1)ᵏ XᵐZᵏYⁿ`.
    pub fn antipode(&self, u: &PBWElement) -> PBWElement {
        let mut out = PBWElement::zero();
        for ((n, m, k), c) in &u.terms {
            let c = if k % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term((*m, *n, *k), c);
        }
        out
    }

    fn coproduct_map(&self, t: &PBWTensor, first: bool) -> Triple {
        let mut out = Triple::new();
        for ((l, (m, q)), c) in &t.terms {
            if first {
                for ((l1, r1), c1) in &self.coproduct(&PBWElement::term(*l, Scalar::one())).terms {
                    add_triple(&mut out, (*l1, *r1, (*m, *q)), c * c1);
                }
            } else {
                for (((_, _, p), r2), c2) in &self.coproduct(&right_element((*m, *q))).terms {
                    add_triple(&mut out, (*l, (0, *p), *r2), c * c2);
                }
            }
        }
        out
    }

    /// Axiom sweep over all monomials with `n + m + k ≤ cap`.
    pub fn axiom_suite(&self, cap: u32) -> Report {
        let mut rep = Report::new();
        let monos = monomials_up_to(cap);
        let idx = |m: &Monomial| vec![m.0 as usize, m.1 as usize, m.2 as usize];
        let idx2 = |a: &Monomial, b: &Monomial| [idx(a), idx(b)].concat();
        let show = |e: &dyn fmt::Display| vec![e.to_string()];

        for u in &monos {
            let ue = PBWElement::monomial(u.0, u.1, u.2);
            let d = self.coproduct(&ue);

            let lhs = self.coproduct_map(&d, true);
            let rhs = self.coproduct_map(&d, false);
            rep.record("coassociativity", &idx(u), lhs == rhs, || (vec![render_triple(&lhs)], vec![render_triple(&rhs)]));

            let mut left = PBWElement::zero();
            let mut right = PBWElement::zero();
            for ((l, r), c) in &d.terms {
                let (x1, x2) = (PBWElement::term(*l, c.clone()), right_element(*r));
                left = left.add(&pbw_mul(&self.counit(&x1), &x2));
                right = right.add(&pbw_mul(&self.counit(&x2).to_target(), &x1));
            }
            rep.record("left_counit", &idx(u), left == ue, || (show(&left), show(&ue)));
            rep.record("right_counit", &idx(u), right == ue, || (show(&right), show(&ue)));

            let bow = self.bowtie_coproduct(*u);
            rep.record("bowtie_consistency", &idx(u), bow == d, || (show(&d), show(&bow)));

            let eps = self.counit(&ue);
            let act = differential_action(*u);
            rep.record("counit_action", &idx(u), eps == act, || (show(&eps), show(&act)));
            rep.assert("counit_in_base", &idx(u), eps.is_source_polynomial());

            let tau = self.antipode(&ue);
            let tt = self.antipode(&tau);
            rep.record("antipode_involutive", &idx(u), tt == ue, || (show(&tt), show(&ue)));

            // Σ τ⁻¹(x₂)₁ ⊗ τ⁻¹(x₂)₂ x₁ = τ⁻¹(x) ⊗ 1 and Σ τ(x₁)₁ x₂ ⊗ τ(x₁)₂ = 1 ⊗ τ(x), with τ⁻¹ = τ.
            let mut ax2 = PBWTensor::zero();
            let mut ax3 = PBWTensor::zero();
            for ((l, r), c) in &d.terms {
                let (x1, x2) = (PBWElement::term(*l, c.clone()), right_element(*r));
                ax2 = ax2.add(&self.coproduct(&self.antipode(&x2)).mul_right_leg(&x1));
                ax3 = ax3.add(&self.coproduct(&self.antipode(&x1)).mul_left_leg(&x2));
            }
            let rhs2 = PBWTensor::simple(&tau, &PBWElement::one());
            let rhs3 = PBWTensor::simple(&PBWElement::one(), &tau);
            rep.record("antipode_inverse_coproduct", &idx(u), ax2 == rhs2, || (show(&ax2), show(&rhs2)));
            rep.record("antipode_coproduct", &idx(u), ax3 == rhs3, || (show(&ax3), show(&rhs3)));
        }

        for a in 0..=cap {
            let s = PBWElement::monomial(a, 0, 0);
            let t = PBWElement::monomial(0, a, 0);
            let ts = self.antipode(&t);
            rep.record("antipode_target_source", &[a as usize], ts == s, || (show(&ts), show(&s)));
            let st = self.antipode(&s);
            rep.record("antipode_source_target", &[a as usize], st == t, || (show(&st), show(&t)));
            let dx = self.coproduct(&s);
            let dy = self.coproduct(&t);
            let ok = dx == PBWTensor::simple(&s, &PBWElement::one()) && dy == PBWTensor::simple(&PBWElement::one(), &t);
            rep.assert("coproduct_on_base", &[a as usize], ok);
        }

        for u in &monos {
            let ue = PBWElement::monomial(u.0, u.1, u.2);
            for v in &monos {
                let ve = PBWElement::monomial(v.0, v.1, v.2);
                let uv = pbw_mul(&ue, &ve);
                let lhs = self.antipode(&uv);
                let rhs = pbw_mul(&self.antipode(&ve), &self.antipode(&ue));
                rep.record("antipode_anti_multiplicative", &idx2(u, v), lhs == rhs, || (show(&lhs), show(&rhs)));
                if u.0 + u.1 + u.2 + v.0 + v.1 + v.2 > cap {
                    continue;
                }
                let word = [monomial_word(u), monomial_word(v)].concat();
                let rw = rewrite_word(&word);
                rep.record("rewriting_agrees", &idx2(u, v), rw == uv, || (show(&uv), show(&rw)));

                let duv = self.coproduct(&uv);
                let prod = self.coproduct(&ue).mul(&self.coproduct(&ve));
                rep.record("coproduct_multiplicative", &idx2(u, v), duv == prod, || (show(&duv), show(&prod)));

                let e = self.counit(&uv);
                let es = self.counit(&pbw_mul(&ue, &self.counit(&ve)));
                let et = self.counit(&pbw_mul(&ue, &self.counit(&ve).to_target()));
                rep.record("counit_source_absorption", &idx2(u, v), e == es, || (show(&e), show(&es)));
                rep.record("counit_target_absorption", &idx2(u, v), e == et, || (show(&e), show(&et)));

                for w in &monos {
                    if u.0 + u.1 + u.2 + v.0 + v.1 + v.2 + w.0 + w.1 + w.2 > cap {
                        continue;
                    }
                    let we = PBWElement::monomial(w.0, w.1, w.2);
                    let l = pbw_mul(&uv, &we);
                    let r = pbw_mul(&ue, &pbw_mul(&ve, &we));
                    rep.record("pbw_associativity", &[idx2(u, v), idx(w)].concat(), l == r, || (show(&l), show(&r)));
                }
            }
        }
        rep.set_fact("degree_cap", cap as usize);
        rep.set_fact("monomials", monos.len());
        rep
    }

    /// `Δ(a ⊗ b̄ ⋈ h) = (a ⊗ 1 ⋈ h₁) ⊗ (1 ⊗ b̄ ⋈ h₂)` with `Δ(Zᵏ) = (Z ⊗ 1 + 1 ⊗ Z)ᵏ` expanded
    /// by repeated multiplication in `K[Z] ⊗ K[Z]`.
    fn bowtie_coproduct(&self, (n, m, k): Monomial) -> PBWTensor {
        let mut dz: BTreeMap<(u32, u32), Scalar> = BTreeMap::from([((0, 0), Scalar::one())]);
        for _ in 0..k {
            let mut next = BTreeMap::new();
            for ((p, q), c) in &dz {
                for (dp, dq) in [(1, 0), (0, 1)] {
                    *next.entry((p + dp, q + dq)).or_insert_with(Scalar::zero) += c;
                }
            }
            dz = next;
        }
        let mut out = PBWTensor::zero();
        for ((p, q), c) in dz {
            let x = pbw_mul(&PBWElement::monomial(n, 0, 0), &PBWElement::monomial(0, 0, p));
            let y = pbw_mul(&PBWElement::monomial(0, 0, q), &PBWElement::monomial(0, m, 0));
            out.add_product(&x, &y, &c);
        }
        out
    }
}

type Triple = BTreeMap<(Monomial, RightKey, RightKey), Scalar>;

fn add_triple(t: &mut Triple, key: (Monomial, RightKey, RightKey), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(key).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&key);
    }
}

fn render_triple(t: &Triple) -> String {
    render_terms(t, |(l, (m1, q1), (m2, q2))| {
        format!(
            "{}⊗{}⊗{}",
            render_monomial(l),
            render_monomial(&(0, *m1, *q1)),
            render_monomial(&(0, *m2, *q2))
        )
    })
}

/// `u ▷ 1` where `X` and `Y` act on `K[X]` by multiplication by `X` and `Z` by `d/dX`.
fn differential_action((n, m, k): Monomial) -> PBWElement {
    let mut poly: BTreeMap<u32, Scalar> = BTreeMap::from([(m, Scalar::one())]);
    for _ in 0..k {
        poly = poly
            .into_iter()
            .filter(|(e, _)| *e > 0)
            .map(|(e, c)| (e - 1, c * Scalar::from_integer(BigInt::from(e))))
            .collect();
    }
    let mut out = PBWElement::zero();
    for (e, c) in poly {
        out.add_term((e + n, 0, 0), c);
    }
    out
}

/// All keys with `n + m + k ≤ cap`, in lexicographic order.
pub fn monomials_up_to(cap: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for n in 0..=cap {
        for m in 0..=cap - n {
            for k in 0..=cap - n - m {
                out.push((n, m, k));
            }
        }
    }
    out
}

pub fn weyl_coproduct(u: &PBWElement) -> PBWTensor {
    WeylAlgebroid::default().coproduct(u)
}

pub fn weyl_counit(u: &PBWElement) -> PBWElement {
    WeylAlgebroid::default().counit(u)
}

pub fn weyl_antipode(u: &PBWElement) -> PBWElement {
    WeylAlgebroid::default().antipode(u)
}

pub fn weyl_axiom_suite(degree_cap: u32) -> Report {
    WeylAlgebroid::default().axiom_suite(degree_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn word(s: &str) -> Vec<Gen> {
        s.chars()
            .map(|c| match c {
                'X' => Gen::X,
                'Y' => Gen::Y,
                'Z' => Gen::Z,
                _ => panic!("bad generator"),
            })
            .collect()
    }

    #[test]
    fn relations() {
        let zx = pbw_mul(&PBWElement::z(), &PBWElement::x());
        assert_eq!(zx, PBWElement::monomial(1, 0, 1).add(&PBWElement::one()));
        assert_eq!(pbw_mul(&PBWElement::x(), &PBWElement::z()), PBWElement::monomial(1, 0, 1));
        let z2x = pbw_mul(&PBWElement::monomial(0, 0, 2), &PBWElement::x());
        assert_eq!(z2x, PBWElement::monomial(1, 0, 2).add(&PBWElement::term((0, 0, 1), int(2))));
        // YZ + 1 = ZY and XY = YX
        let yz = pbw_mul(&PBWElement::y(), &PBWElement::z()).add(&PBWElement::one());
        assert_eq!(yz, pbw_mul(&PBWElement::z(), &PBWElement::y()));
        assert_eq!(pbw_mul(&PBWElement::x(), &PBWElement::y()), pbw_mul(&PBWElement::y(), &PBWElement::x()));
    }

    #[test]
    fn closed_form_matches_word_rewriting() {
        for w in ["ZZX", "YZX", "YYZZXX", "ZYXZY", "YXZ"] {
            let w = word(w);
            let expect = w.iter().fold(PBWElement::one(), |acc, g| {
                let e = match g {
                    Gen::X => PBWElement::x(),
                    Gen::Y => PBWElement::y(),
                    Gen::Z => PBWElement::z(),
                };
                pbw_mul(&acc, &e)
            });
            assert_eq!(rewrite_word(&w), expect);
        }
    }

    #[test]
    fn structure_maps_spot_values() {
        assert_eq!(weyl_coproduct(&PBWElement::z()).to_string(), "Z⊗1 + 1⊗Z");
        assert_eq!(weyl_coproduct(&PBWElement::x()).to_string(), "X⊗1");
        let d = weyl_coproduct(&PBWElement::monomial(1, 0, 2));
        assert_eq!(d.coefficient((1, 0, 2), (0, 0)), int(1));
        assert_eq!(d.coefficient((1, 0, 1), (0, 1)), int(2));
        assert_eq!(d.coefficient((1, 0, 0), (0, 2)), int(1));
        assert_eq!(d.terms().len(), 3);
        assert_eq!(weyl_counit(&PBWElement::monomial(0, 2, 1)), PBWElement::term((1, 0, 0), int(2)));
        assert!(weyl_counit(&PBWElement::monomial(0, 0, 2)).is_zero());
        assert_eq!(weyl_counit(&PBWElement::monomial(3, 0, 0)), PBWElement::monomial(3, 0, 0));
        assert_eq!(weyl_antipode(&PBWElement::monomial(1, 2, 3)), PBWElement::term((2, 1, 3), int(-1)));
        assert_eq!(weyl_antipode(&PBWElement::one()), PBWElement::one());
        let u = PBWElement::monomial(2, 0, 1);
        assert_eq!(weyl_antipode(&weyl_antipode(&u)), u);
    }

    #[test]
    fn tensor_normalization_moves_x_left() {
        // 1 ⊗ X = t(X) ⊗ 1 = Y ⊗ 1
        let t = PBWTensor::simple(&PBWElement::one(), &PBWElement::x());
        assert_eq!(t, PBWTensor::simple(&PBWElement::y(), &PBWElement::one()));
    }

    #[test]
    fn suite_passes_at_small_cap() {
        let rep = weyl_axiom_suite(3);
        assert!(rep.passed(), "{:?}", rep.failed_checks());
    }

    #[test]
    fn corrupted_binomial_is_detected() {
        fn bad(k: u32, p: u32) -> Scalar {
            binomial(k, p) + int(1)
        }
        let rep = WeylAlgebroid { binomial: bad }.axiom_suite(4);
        assert!(!rep.check_passed("coassociativity"));
        assert!(!rep.check_passed("bowtie_consistency"));
        assert!(rep.first_witness("coassociativity").is_some());
    }
}
