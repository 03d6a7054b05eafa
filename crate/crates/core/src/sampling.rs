//! Seeded random inputs shared by the verification suites and the tests.

use rand::Rng;

use crate::fuchsian::HPoint;
use crate::octonion::{ImVector, SplitOct};
use crate::scalar::{rat, Rational};
use crate::sextic::{q6, q6_pair, Sextic};

/// Uniform rational in [lo, hi] with denominator `den`.
pub fn rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.gen_range(lo * den..=hi * den), den)
}

pub fn rational_oct<R: Rng>(rng: &mut R) -> SplitOct<Rational> {
    SplitOct::new(std::array::from_fn(|_| rational(rng, -5, 5, 3)))
}

pub fn rational_im<R: Rng>(rng: &mut R) -> ImVector<Rational> {
    ImVector::m(std::array::from_fn(|_| rational(rng, -5, 5, 3)))
}

pub fn f64_oct<R: Rng>(rng: &mut R) -> SplitOct<f64> {
    SplitOct::new(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
}

pub fn f64_im<R: Rng>(rng: &mut R) -> ImVector<f64> {
    ImVector::m(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
}

/// A nonzero rational null vector q(v) n0 - 2 q(v, n0) v with n0 = i + l.
pub fn rational_null<R: Rng>(rng: &mut R) -> ImVector<Rational> {
    let n0 = ImVector::<Rational>::from_ints([1, 0, 0, 1, 0, 0, 0]);
    loop {
        let v = rational_im(rng);
        let u = n0.scale(&v.quad()) - v.scale(&(v.quad_pair(&n0).expect("same basis") * rat(2, 1)));
        if !u.is_zero() {
            return u;
        }
    }
}

/// A rational null sextic of full degree, Q6(v) X^6 - 2 Q6(v, X^6) v.
pub fn rational_null_sextic<R: Rng>(rng: &mut R) -> Sextic<Rational> {
    let n0 = Sextic::<Rational>::from_ints(&[1, 0, 0, 0, 0, 0, 0]);
    loop {
        let v = Sextic::new((0..7).map(|_| rational(rng, -4, 4, 2)).collect());
        let p = n0.scale(&q6(&v)) - v.scale(&(q6_pair(&v, &n0) * rat(2, 1)));
        if !p.is_zero() && p.degree() == 6 {
            return p;
        }
    }
}

fn orthogonalize(v: ImVector<f64>, against: &[ImVector<f64>]) -> ImVector<f64> {
    against.iter().fold(v, |acc, e| {
        let c = acc.quad_pair(e).expect("same basis") / e.quad();
        acc - e.scale(&c)
    })
}

/// A random float triple (x, y, z) with q(x) = q(y) = 1, q(z) = -1 and z
/// orthogonal to x, y and x × y.
pub fn stiefel_triple<R: Rng>(rng: &mut R) -> (ImVector<f64>, ImVector<f64>, ImVector<f64>) {
    let pick = |rng: &mut R, against: &[ImVector<f64>], positive: bool| loop {
        let v = orthogonalize(f64_im(rng), against);
        let q = v.quad();
        if (positive && q > 0.1) || (!positive && q < -0.1) {
            return v.scale(&(1.0 / q.abs().sqrt()));
        }
    };
    let x = pick(rng, &[], true);
    let y = pick(rng, std::slice::from_ref(&x), true);
    let xy = x.cross(&y).expect("same basis");
    let z = pick(rng, &[x.clone(), y.clone(), xy], false);
    (x, y, z)
}

pub fn hpoint<R: Rng>(rng: &mut R) -> HPoint<f64> {
    HPoint { x: rng.gen_range(-1.0..1.0), y: rng.gen_range(0.5..2.0) }
}

pub fn rational_hpoint<R: Rng>(rng: &mut R) -> HPoint<Rational> {
    let y = loop {
        let y = rational(rng, 0, 3, 4);
        if y > rat(0, 1) {
            break y;
        }
    };
    HPoint { x: rational(rng, -2, 2, 4), y }
}
