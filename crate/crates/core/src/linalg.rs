//! Exact rational linear algebra: rank, kernel bases and linear solves by
//! fraction-free (Bareiss) elimination with first-nonzero pivoting.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Rational = BigRational;
pub type RationalVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction. The zero vector maps to itself.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &gcd).collect()
    }
}

/// Row-echelon form over the integers, produced by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    cols: usize,
}

fn echelon(matrix: &[RationalVector], cols: usize) -> Echelon {
    let mut rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            debug_assert_eq!(row.len(), cols);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * &lcm).to_integer()).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let num = pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    Echelon { rows, pivots, cols }
}

impl Echelon {
    /// Back-substitutes with the given values for the free columns.
    fn back_substitute(&self, mut x: Vec<Rational>, rhs: Option<&[BigInt]>) -> Vec<Rational> {
        for (r, &pc) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[r];
            let mut acc = match rhs {
                Some(b) => Rational::from_integer(b[r].clone()),
                None => Rational::zero(),
            };
            for j in pc + 1..self.cols {
                if !row[j].is_zero() {
                    acc -= &x[j] * Rational::from_integer(row[j].clone());
                }
            }
            x[pc] = acc / Rational::from_integer(row[pc].clone());
        }
        x
    }
}

/// Rank of a rational matrix with `cols` columns.
pub fn rank(matrix: &[RationalVector], cols: usize) -> usize {
    echelon(matrix, cols).pivots.len()
}

/// A basis of `{x : M x = 0}`, one primitive integer vector per free column,
/// normalized so the free coordinate is positive.
pub fn kernel_basis(matrix: &[RationalVector], cols: usize) -> Vec<RationalVector> {
    let ech = echelon(matrix, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            let x = ech.back_substitute(x, None);
            let mut ints = primitive_integer(&x);
            if ints[f].is_negative() {
                ints.iter_mut().for_each(|v| *v = -&*v);
            }
            ints.into_iter().map(Rational::from_integer).collect()
        })
        .collect()
}

/// Some solution of `M x = b`, with free variables set to zero, or `None`
/// if the system is inconsistent.
pub fn solve(matrix: &[RationalVector], cols: usize, b: &[Rational]) -> Option<RationalVector> {
    debug_assert_eq!(matrix.len(), b.len());
    let augmented: Vec<RationalVector> = matrix
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = echelon(&augmented, cols + 1);
    if ech.pivots.last() == Some(&cols) {
        return None;
    }
    let rhs: Vec<BigInt> = ech.rows.iter().map(|r| r[cols].clone()).collect();
    let core = Echelon {
        rows: ech.rows,
        pivots: ech.pivots,
        cols,
    };
    Some(core.back_substitute(vec![Rational::zero(); cols], Some(&rhs)))
}

pub fn transpose(matrix: &[RationalVector], cols: usize) -> Vec<RationalVector> {
    (0..cols)
        .map(|c| matrix.iter().map(|row| row[c].clone()).collect())
        .collect()
}

pub fn mat_vec(matrix: &[RationalVector], x: &[Rational]) -> RationalVector {
    matrix.iter().map(|row| dot(row, x)).collect()
}
