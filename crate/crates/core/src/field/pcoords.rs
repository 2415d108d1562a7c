//! Coordinates of field elements over `K^p` and linear algebra over `K^p`.
//!
//! `K = GF(p)(g1..gk)` has the standard basis `{g^r : 0 <= r_i < p}` over
//! `K^p`. An element `N/D` is rewritten as `N*D^(p-1) / D^p`; grouping the
//! numerator terms by exponent residues mod `p` gives one `K^p` coordinate
//! per basis monomial.

use super::poly::{Exps, Poly};
use super::presentation::Field;
use super::rational::RationalFunction;

/// All exponent vectors in `[0, p)^n`, lexicographic with the first slot
/// most significant.
pub fn residue_vectors(p: u32, n: usize) -> Vec<Exps> {
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut e = Exps::from_elem(0, n);
            for slot in (0..n).rev() {
                e[slot] = (k % p as usize) as u32;
                k /= p as usize;
            }
            e
        })
        .collect()
}

fn residue_index(p: u32, r: &[u32]) -> usize {
    r.iter()
        .fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

/// The standard monomial basis of `K` over `K^p`, as field elements.
pub fn standard_basis(field: &Field) -> Vec<RationalFunction> {
    residue_vectors(field.characteristic(), field.num_gens())
        .into_iter()
        .map(|e| RationalFunction::monomial(field, &e, 1))
        .collect()
}

/// Coordinates of an element with respect to [`standard_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCoordinates {
    field: Field,
    entries: Vec<RationalFunction>,
    /// `entries[r] = (roots[r] / root_den)^p`, kept unreduced for elimination.
    roots: Vec<Poly>,
    root_den: Poly,
}

impl PCoordinates {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ entry_b * b` over the standard basis.
    pub fn reconstruct(&self) -> RationalFunction {
        standard_basis(&self.field)
            .iter()
            .zip(&self.entries)
            .fold(RationalFunction::zero(&self.field), |acc, (b, e)| {
                &acc + &(e * b)
            })
    }
}

pub fn p_coordinates(a: &RationalFunction) -> PCoordinates {
    let field = a.field().clone();
    let p = field.characteristic();
    let n = field.num_gens();
    let dim = (p as usize).pow(n as u32);
    let den = a.denominator();
    let num = if den.is_one() {
        a.numerator().clone()
    } else {
        a.numerator().mul(&den.pow(p as u64 - 1))
    };
    let mut buckets: Vec<Vec<(Exps, u32)>> = vec![Vec::new(); dim];
    for (e, c) in num.terms() {
        let r: Exps = e.iter().map(|x| x % p).collect();
        let q: Exps = e.iter().zip(&r).map(|(x, y)| (x - y) / p).collect();
        buckets[residue_index(p, &r)].push((q, *c));
    }
    let roots: Vec<Poly> = buckets
        .into_iter()
        .map(|ts| Poly::from_terms(p, n, ts))
        .collect();
    // (q/D)^p is reduced once q/D is, and the gcd is cheaper before the power
    let entries = roots
        .iter()
        .map(|q| {
            let r = RationalFunction::new(&field, q.clone(), den.clone());
            r.frobenius()
        })
        .collect();
    PCoordinates {
        field,
        entries,
        roots,
        root_den: den.clone(),
    }
}

/// Result of eliminating over `K^p`.
#[derive(Clone, Debug)]
pub struct LinearSolve {
    pub rank: usize,
    /// Coefficients `λ_j` with `Σ λ_j v_j = target`, free variables set to 0.
    pub solution: Option<Vec<RationalFunction>>,
}

/// Fraction-free row echelon form of a polynomial matrix (Bareiss); every
/// division is exact. Returns the pivot columns.
fn echelon(rows: &mut [Vec<Poly>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev: Option<Poly> = None;
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead =
                std::mem::replace(&mut row[c], Poly::zero(piv.characteristic(), piv.nvars()));
            for j in c + 1..ncols {
                let mut x = row[j].mul(piv);
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    x = x.sub(&lead.mul(&pivot_row[j]));
                }
                if let Some(d) = &prev {
                    x = x.div_exact(d).expect("Bareiss step divides exactly");
                }
                row[j] = x;
            }
        }
        prev = Some(piv.clone());
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row-major polynomial matrix whose columns are the rooted vectors, each
/// scaled by its own denominator, zero rows dropped.
fn matrix(vectors: &[&PCoordinates]) -> Vec<Vec<Poly>> {
    let dim = vectors.first().map_or(0, |v| v.roots.len());
    (0..dim)
        .map(|i| {
            vectors
                .iter()
                .map(|v| v.roots[i].clone())
                .collect::<Vec<_>>()
        })
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Rank over `K^p` of a family of coordinate vectors.
pub fn rank_over_pth_powers(vectors: &[PCoordinates]) -> usize {
    let cols: Vec<&PCoordinates> = vectors.iter().collect();
    let mut rows = matrix(&cols);
    echelon(&mut rows, cols.len()).len()
}

/// Whether the vectors are linearly independent over `K^p`.
pub fn independent_over_pth_powers(vectors: &[PCoordinates]) -> bool {
    let cols: Vec<&PCoordinates> = vectors.iter().collect();
    let mut rows = matrix(&cols);
    // the rank is bounded by the number of nonzero rows
    rows.len() >= cols.len() && echelon(&mut rows, cols.len()).len() == cols.len()
}

/// Solves `Σ λ_j vectors[j] = target` over `K^p`.
///
/// Works over `K` on the p-th roots: if `Σ ν_j P_j = T` for the scaled
/// polynomial columns `P_j = D_j·v_j^(1/p)` and `T = D·target^(1/p)`, then
/// `λ_j = (ν_j·D_j/D)^p`.
pub fn solve_over_pth_powers(vectors: &[PCoordinates], target: &PCoordinates) -> LinearSolve {
    let field = target.field.clone();
    let k = vectors.len();
    let mut cols: Vec<&PCoordinates> = vectors.iter().collect();
    cols.push(target);
    let mut rows = matrix(&cols);
    let pivots = echelon(&mut rows, k + 1);
    let rank = pivots.iter().filter(|&&c| c < k).count();
    if pivots.contains(&k) {
        return LinearSolve {
            rank,
            solution: None,
        };
    }
    let lift = |q: &Poly| RationalFunction::from_poly(&field, q.clone());
    // Fraction-free back substitution: with `det` the last pivot,
    // `y = det·ν` is polynomial by Cramer's rule and every division is exact.
    let mut nu = vec![RationalFunction::zero(&field); k];
    if let Some(&last) = pivots.last() {
        let det = rows[pivots.len() - 1][last].clone();
        let mut y: Vec<Option<Poly>> = vec![None; k];
        for (r, &c) in pivots.iter().enumerate().rev() {
            let mut acc = rows[r][k].mul(&det);
            for &c2 in pivots.iter().skip(r + 1) {
                if let Some(yc) = &y[c2] {
                    if !rows[r][c2].is_zero() {
                        acc = acc.sub(&rows[r][c2].mul(yc));
                    }
                }
            }
            y[c] = Some(
                acc.div_exact(&rows[r][c])
                    .expect("Cramer numerators are polynomial"),
            );
        }
        let det = lift(&det);
        for (c, yc) in y.into_iter().enumerate() {
            if let Some(yc) = yc {
                nu[c] = &lift(&yc) / &det;
            }
        }
    }
    let target_den = lift(&target.root_den);
    let solution = nu
        .iter()
        .zip(vectors)
        .map(|(x, v)| {
            if x.is_zero() {
                x.clone()
            } else {
                (&(x * &lift(&v.root_den)) / &target_den).frobenius()
            }
        })
        .collect();
    LinearSolve {
        rank,
        solution: Some(solution),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_presentation;

    #[test]
    fn basis_order() {
        let k = make_presentation(2, &["c"], true).unwrap();
        let names: Vec<String> = standard_basis(&k).iter().map(|b| b.to_string()).collect();
        assert_eq!(names, ["1", "t", "c", "t*c"]);
    }

    #[test]
    fn coordinates_of_t() {
        let k = make_presentation(3, &["c"], true).unwrap();
        let t = RationalFunction::named(&k, "t").unwrap();
        let co = p_coordinates(&t);
        assert_eq!(co.len(), 9);
        for (i, e) in co.entries().iter().enumerate() {
            if i == 1 {
                assert!(e.is_one());
            } else {
                assert!(e.is_zero());
            }
        }
    }

    #[test]
    fn coordinates_of_cp() {
        let k = make_presentation(3, &["c"], true).unwrap();
        let c3 = RationalFunction::named(&k, "c").unwrap().pow(3);
        let co = p_coordinates(&c3);
        assert_eq!(co.entries()[0], c3);
        assert!(co.entries()[1..].iter().all(|e| e.is_zero()));
    }

    #[test]
    fn coordinates_reconstruct_fraction() {
        let k = make_presentation(3, &["c"], true).unwrap();
        let c = RationalFunction::named(&k, "c").unwrap();
        let t = RationalFunction::named(&k, "t").unwrap();
        let one = RationalFunction::one(&k);
        let a = (&t + &c) / (&t * &(&t + &one) + &c);
        let co = p_coordinates(&a);
        assert_eq!(co.reconstruct(), a);
        assert!(co.entries().iter().all(|e| e.is_pth_power()));
    }

    #[test]
    fn scalar_solve() {
        let k = make_presentation(3, &["c"], true).unwrap();
        let c3 = RationalFunction::named(&k, "c").unwrap().pow(3);
        let s = solve_over_pth_powers(
            &[p_coordinates(&RationalFunction::one(&k))],
            &p_coordinates(&c3),
        );
        assert_eq!(s.solution, Some(vec![c3]));
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn dependent_over_squares() {
        let k = make_presentation(2, &["c"], true).unwrap();
        let t = RationalFunction::named(&k, "t").unwrap();
        let vs = [
            p_coordinates(&RationalFunction::one(&k)),
            p_coordinates(&t.pow(2)),
        ];
        assert_eq!(rank_over_pth_powers(&vs), 1);
    }

    #[test]
    fn t_outside_span_of_one_and_c() {
        let k = make_presentation(2, &["c"], true).unwrap();
        let t = RationalFunction::named(&k, "t").unwrap();
        let c = RationalFunction::named(&k, "c").unwrap();
        let vs = [p_coordinates(&RationalFunction::one(&k)), p_coordinates(&c)];
        let s = solve_over_pth_powers(&vs, &p_coordinates(&t));
        assert!(s.solution.is_none());
        assert_eq!(s.rank, 2);
    }
}
