//! Univariate polynomials over F_p, low-degree only. Coefficients are stored
//! lowest degree first with no trailing zeros.

use crate::field::Prime;
use crate::matrix::FpMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    p: Prime,
    coeffs: Vec<u8>,
}

impl Poly {
    pub fn new(p: Prime, mut coeffs: Vec<u8>) -> Self {
        coeffs.iter_mut().for_each(|c| *c %= p.get());
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn one(p: Prime) -> Self {
        Poly { p, coeffs: vec![1] }
    }

    /// `x - a`
    pub fn linear(p: Prime, a: u8) -> Self {
        Poly::new(p, vec![p.neg(a), 1])
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = self.p.inv(lead);
                Poly::new(self.p, self.coeffs.iter().map(|&c| self.p.mul(c, inv)).collect())
            }
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(self.p, vec![]);
        }
        let p = self.p;
        let mut out = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = p.add(out[i + j], p.mul(a, b));
            }
        }
        Poly::new(p, out)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let inv = p.inv(*divisor.coeffs.last().unwrap());
        if rem.len() <= dd {
            return (Poly::new(p, vec![]), self.clone());
        }
        let mut quot = vec![0u8; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = p.mul(rem[k + dd], inv);
            quot[k] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = p.sub(rem[k + j], p.mul(c, d));
                }
            }
        }
        (Poly::new(p, quot), Poly::new(p, rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Irreducibility by trial division with every monic polynomial of degree
    /// at most half the degree.
    pub fn is_irreducible(&self) -> bool {
        let d = self.degree();
        if self.is_zero() || d == 0 {
            return false;
        }
        (1..=d / 2).all(|k| monic_polys(self.p, k).all(|f| !f.divides(self)))
    }

    /// Distinct monic irreducible factors with multiplicities, by trial division.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut k = 1;
        while rest.degree() > 0 {
            if 2 * k > rest.degree() {
                // what is left is irreducible
                out.push((rest.clone(), 1));
                break;
            }
            for f in monic_polys(self.p, k) {
                if !f.is_irreducible() {
                    continue;
                }
                let mut mult = 0;
                while f.divides(&rest) {
                    rest = rest.div_rem(&f).0;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((f, mult));
                }
            }
            k += 1;
        }
        out
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &FpMatrix) -> FpMatrix {
        let n = a.rows();
        let mut acc = FpMatrix::zeros(self.p, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&FpMatrix::scalar(self.p, n, c));
        }
        acc
    }
}

/// Outcome of [`coprime_split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitOutcome {
    /// `f = a * b` with `a`, `b` coprime and of positive degree.
    Split(Poly, Poly),
    /// `f` is a power of a single irreducible polynomial of this degree.
    Primary(usize),
}

fn x_poly(p: Prime) -> Poly {
    Poly::new(p, vec![0, 1])
}

fn mul_mod(a: &Poly, b: &Poly, m: &Poly) -> Poly {
    a.mul(b).div_rem(m).1
}

fn pow_mod(base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut result = Poly::one(base.p).div_rem(m).1;
    let mut b = base.div_rem(m).1;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, m);
        }
    }
    result
}

/// Splits off from `f` every irreducible factor it shares with `g`, with full
/// multiplicity: returns `(a, b)` with `a * b = f`.
fn separate(f: &Poly, g: &Poly) -> (Poly, Poly) {
    let mut a = Poly::one(f.p);
    let mut rest = f.monic();
    loop {
        let c = rest.gcd(g);
        if c.degree() == 0 {
            break;
        }
        rest = rest.div_rem(&c).0;
        a = a.mul(&c);
    }
    (a, rest)
}

/// Random splitting of a squarefree `g` whose irreducible factors all have
/// degree `k` and which has at least two of them.
fn equal_degree_split<R: rand::Rng + ?Sized>(g: &Poly, k: usize, rng: &mut R) -> Option<Poly> {
    let p = g.p;
    let q = p.get();
    let n = g.degree();
    for _ in 0..256 {
        let r = Poly::new(p, (0..n).map(|_| rng.gen_range(0..q)).collect());
        if r.degree() == 0 {
            continue;
        }
        let d = r.gcd(g);
        if d.degree() > 0 && d.degree() < n {
            return Some(d);
        }
        let w = if q == 2 {
            // trace map r + r^2 + ... + r^(2^(k-1))
            let mut acc = r.div_rem(g).1;
            let mut term = acc.clone();
            for _ in 1..k {
                term = mul_mod(&term, &term, g);
                acc = Poly::new(p, add_coeffs(p, &acc.coeffs, &term.coeffs));
            }
            acc
        } else {
            // r^((q^k - 1) / 2) = (prod_i r^(q^i))^((q - 1) / 2)
            let mut prod = Poly::one(p);
            let mut term = r.div_rem(g).1;
            for i in 0..k {
                if i > 0 {
                    term = pow_mod(&term, q as u64, g);
                }
                prod = mul_mod(&prod, &term, g);
            }
            let h = pow_mod(&prod, (q as u64 - 1) / 2, g);
            Poly::new(p, add_coeffs(p, &h.coeffs, &[p.neg(1)]))
        };
        let d = w.gcd(g);
        if d.degree() > 0 && d.degree() < n {
            return Some(d);
        }
    }
    None
}

fn add_coeffs(p: Prime, a: &[u8], b: &[u8]) -> Vec<u8> {
    (0..a.len().max(b.len())).map(|i| p.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0))).collect()
}

/// Finds a coprime factorization of a nonconstant `f` into two nonconstant
/// parts, or reports that `f` is primary. Distinct-degree factorization first,
/// then randomized equal-degree splitting.
pub fn coprime_split<R: rand::Rng + ?Sized>(f: &Poly, rng: &mut R) -> SplitOutcome {
    let p = f.p;
    let f = f.monic();
    assert!(f.degree() > 0, "coprime_split of a constant");
    let x = x_poly(p);
    let mut xpk = x.div_rem(&f).1;
    for k in 1..=f.degree() {
        xpk = pow_mod(&xpk, p.get() as u64, &f);
        let diff = Poly::new(p, add_coeffs(p, &xpk.coeffs, &Poly::new(p, vec![0, p.neg(1)]).coeffs));
        let g = f.gcd(&diff);
        if g.degree() == 0 {
            continue;
        }
        let (a, b) = separate(&f, &g);
        if b.degree() > 0 {
            return SplitOutcome::Split(a, b);
        }
        if g.degree() == k {
            return SplitOutcome::Primary(k);
        }
        loop {
            if let Some(d) = equal_degree_split(&g, k, rng) {
                let (a, b) = separate(&f, &d);
                return SplitOutcome::Split(a, b);
            }
        }
    }
    unreachable!("every nonconstant polynomial has an irreducible factor")
}

/// All monic polynomials of the given degree.
pub fn monic_polys(p: Prime, degree: usize) -> impl Iterator<Item = Poly> {
    let q = p.get() as u64;
    let count = q.pow(degree as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push((idx % q) as u8);
            idx /= q;
        }
        coeffs.push(1);
        Poly::new(p, coeffs)
    })
}

/// Minimal polynomial of the element whose successive powers are produced by
/// `power(k)` as coordinate vectors (with `power(0)` the unit).
pub fn minimal_polynomial(p: Prime, max_degree: usize, mut power: impl FnMut(usize) -> Vec<u8>) -> Poly {
    let mut vecs: Vec<Vec<u8>> = Vec::new();
    for k in 0..=max_degree {
        vecs.push(power(k));
        let m = FpMatrix::from_column_vectors(p, vecs[0].len(), &vecs);
        let ker = m.kernel_basis();
        if ker.rows() > 0 {
            // the kernel is one-dimensional with nonzero top coefficient
            let rel = ker.row(0).to_vec();
            return Poly::new(p, rel).monic();
        }
    }
    panic!("element has no minimal polynomial of degree <= {max_degree}");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u8, c: &[u8]) -> Poly {
        Poly::new(Prime::new(p).unwrap(), c.to_vec())
    }

    #[test]
    fn irreducibility_over_f2() {
        assert!(poly(2, &[1, 1, 1]).is_irreducible()); // x^2 + x + 1
        assert!(!poly(2, &[1, 0, 1]).is_irreducible()); // (x + 1)^2
        assert!(poly(2, &[1, 1, 0, 1]).is_irreducible()); // x^3 + x + 1
        let count = monic_polys(Prime::new(2).unwrap(), 3).filter(Poly::is_irreducible).count();
        assert_eq!(count, 2);
    }

    #[test]
    fn counts_irreducible_quadratics_over_f3() {
        // (q^2 - q) / 2 = 3
        let count = monic_polys(Prime::new(3).unwrap(), 2).filter(Poly::is_irreducible).count();
        assert_eq!(count, 3);
    }

    #[test]
    fn factorization_reassembles() {
        let f = poly(3, &[1, 1]).mul(&poly(3, &[1, 1])).mul(&poly(3, &[1, 0, 1]));
        let fac = f.factor();
        assert_eq!(fac.len(), 2);
        let mut prod = Poly::one(Prime::new(3).unwrap());
        for (g, m) in &fac {
            for _ in 0..*m {
                prod = prod.mul(g);
            }
        }
        assert_eq!(prod, f.monic());
    }

    #[test]
    fn gcd_and_division() {
        let a = poly(5, &[4, 0, 1]); // x^2 - 1
        let b = poly(5, &[1, 1]); // x + 1
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, poly(5, &[4, 1]));
    }

    #[test]
    fn coprime_split_cases() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // (x + 1)^3 is primary of degree 1
        let cube = poly(2, &[1, 1]).mul(&poly(2, &[1, 1])).mul(&poly(2, &[1, 1]));
        assert_eq!(coprime_split(&cube, &mut rng), SplitOutcome::Primary(1));
        // x^2 + x + 1 over F_2 is irreducible
        assert_eq!(coprime_split(&poly(2, &[1, 1, 1]), &mut rng), SplitOutcome::Primary(2));
        // two distinct irreducibles of equal degree, one squared
        for pr in [2u8, 3, 5] {
            let deg = if pr == 2 { 3 } else { 2 };
            let irr: Vec<Poly> = monic_polys(Prime::new(pr).unwrap(), deg).filter(Poly::is_irreducible).take(2).collect();
            let f = irr[0].mul(&irr[0]).mul(&irr[1]);
            match coprime_split(&f, &mut rng) {
                SplitOutcome::Split(a, b) => {
                    assert_eq!(a.mul(&b), f.monic());
                    assert_eq!(a.gcd(&b).degree(), 0);
                    assert!(a.degree() > 0 && b.degree() > 0);
                }
                other => panic!("expected a split, got {other:?}"),
            }
        }
        // mixed degrees
        let f = poly(3, &[1, 1]).mul(&poly(3, &[1, 0, 1]));
        assert!(matches!(coprime_split(&f, &mut rng), SplitOutcome::Split(..)));
    }

    #[test]
    fn min_poly_of_rotation() {
        let p = Prime::new(3).unwrap();
        // [[0,-1],[1,0]] has minimal polynomial x^2 + 1
        let a = FpMatrix::from_rows(p, &[vec![0, -1], vec![1, 0]]).unwrap();
        let mp = minimal_polynomial(p, 4, |k| a.pow(k as u64).flatten());
        assert_eq!(mp, poly(3, &[1, 0, 1]));
        assert!(mp.eval_matrix(&a).is_zero());
    }
}
