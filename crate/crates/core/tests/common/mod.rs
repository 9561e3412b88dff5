//! Test-only oracles, written independently of the library code paths.
#![allow(dead_code)]

/// Double-double number: value = hi + lo with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Dd::new(q1)).neg());
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(Dd::new(q2)).neg());
        let q3 = r.hi / o.hi;
        Dd::new(q1).add(Dd::new(q2)).add(Dd::new(q3))
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn abs_f64(self) -> f64 {
        self.hi.abs()
    }
}

/// ₂F₁ by direct summation in double-double arithmetic. `pair_product(n)`
/// returns (a+n)(b+n) exactly representable inputs are assumed.
pub fn hyp2f1_dd(a_re: f64, a_im: f64, b_re: f64, conjugate: bool, c: f64, y: f64) -> f64 {
    let yd = Dd::new(y);
    let mut term = Dd::new(1.0);
    let mut sum = Dd::new(1.0);
    for n in 0..400_000 {
        let nd = Dd::new(n as f64);
        let num = if conjugate {
            let r = Dd::new(a_re).add(nd);
            r.mul(r).add(Dd::new(a_im).mul(Dd::new(a_im)))
        } else {
            Dd::new(a_re).add(nd).mul(Dd::new(b_re).add(nd))
        };
        let den = Dd::new(c).add(nd).mul(nd.add(Dd::new(1.0)));
        term = term.mul(num).div(den).mul(yd);
        sum = sum.add(term);
        if n > 200 && term.abs_f64() < 1e-34 * sum.abs_f64() {
            break;
        }
        if term.hi == 0.0 {
            break;
        }
    }
    sum.hi + sum.lo
}

/// K_ν(x) = ∫₀^∞ exp(−x cosh t) cosh(νt) dt by the trapezoidal rule, which
/// converges geometrically for this analytic, double-exponentially decaying
/// integrand.
pub fn bessel_k_quadrature(nu: f64, x: f64) -> f64 {
    let h = 0.01;
    // Stop once the exponent has dropped by 800 from its peak.
    let mut peak = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut t: f64 = 0.0;
    let mut k = 0usize;
    loop {
        let expo = -x * t.cosh() + nu * t;
        peak = peak.max(expo);
        let val = (-x * t.cosh()).exp() * (nu * t).cosh();
        sum += if k == 0 { 0.5 * val } else { val };
        if expo < peak - 800.0 || expo < -800.0 {
            break;
        }
        k += 1;
        t = k as f64 * h;
    }
    sum * h
}

/// Deterministic pseudo-random stream (SplitMix64) for parameter draws.
pub struct Stream(u64);

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}

use matsusy_core::catalog::{Branch, FamilyId, Params};

/// Random parameters for which the branch is available on the family.
pub fn draw_params(f: FamilyId, b: Branch, s: &mut Stream) -> Params {
    use FamilyId::*;
    let lambda = s.uniform(0.5, 2.0);
    let p = match (f, b) {
        (F0Oscillator, _) => Params::new(0.0, s.uniform(-2.0, 2.0), s.uniform(0.3, 3.0)),
        (F1CoulombLike, Branch::KappaBranch) => {
            let k = s.uniform(0.2, 4.0);
            Params::new(k, s.uniform(-0.45, k - 0.05), s.uniform(0.2, 3.0))
        }
        (F1CoulombLike, Branch::MuBranch) => {
            let k = s.uniform(0.0, 3.0);
            let m = s.uniform((k - 0.95).max(-0.45), k + 2.0);
            Params::new(k, m, s.uniform(0.2, 3.0))
        }
        (F2MorseLike | F5HypRmLike, _) => {
            let k = s.uniform(-5.0, -1.2);
            let w = s.uniform(0.1, (k * k - 0.2).min(3.0));
            Params::new(k, s.uniform(0.2, 3.0), w)
        }
        (F3TrigRmLike, Branch::KappaBranch) => {
            let k = s.uniform(0.4, 4.0);
            Params::new(k, s.uniform(0.1, k - 0.1), s.uniform(0.1, 3.0))
        }
        (F3TrigRmLike, Branch::MuBranch) => {
            let m = s.uniform(0.1, 3.0);
            let mut k: f64 = 0.0;
            while k.abs() < 0.05 {
                k = s.uniform(-m + 0.05, m + 0.95);
            }
            Params::new(k, m, s.uniform(0.1, 3.0))
        }
        (F4EckartLike, Branch::KappaBranch) => {
            let k = s.uniform(-5.0, -1.2);
            let w = s.uniform(0.1, (k * k - 0.2).min(3.0));
            Params::new(k, s.uniform(k - 3.0, k - 0.05), w)
        }
        (F4EckartLike, Branch::MuBranch) => {
            let m = s.uniform(-5.0, -1.2);
            let t = 2.0 * m + 1.0;
            let w = s.uniform(0.1, (t * t / 4.0 - 0.1).min(3.0));
            Params::new(s.uniform(m - 2.0, m + 0.95), m, w)
        }
        (F6Extended, _) => {
            Params::new(s.uniform(-0.4, 3.0), 0.0, s.uniform(0.2, 3.0)).with_c(s.uniform(0.5, 3.0))
        }
        _ => panic!("no generator for {f} on {b}"),
    };
    p.with_lambda(lambda)
}

/// (family, branch) pairs with closed-form superpotentials.
pub fn matrix_pairs() -> Vec<(FamilyId, Branch)> {
    let mut v = Vec::new();
    for f in FamilyId::ALL {
        if f.is_scalar_reference() {
            continue;
        }
        for b in matsusy_core::catalog::defined_branches(f) {
            v.push((f, b));
        }
    }
    v
}
