//! Certified group elements, generators and seeded sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::space::{Kind, QuadraticSpace};
use crate::error::{Error, Result};
use crate::gf::{Elem, FqMatrix};

/// Default length of the random words used by `sample`.
pub const WORD_LENGTH: usize = 50;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certified {
    pub preserves_form: bool,
    pub preserves_q: bool,
    /// Membership in the group the verifiers act on: `Sp(V)` for the
    /// symplectic kind, `Ω(V)` (quasi-determinant `+1`) for orthogonal kinds
    /// in characteristic 2, and `SO(V)` (determinant 1) in odd
    /// characteristic.
    pub in_omega: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    pub matrix: FqMatrix,
    pub certified: Certified,
}

/// `κ(g) = (−1)^{dim ker(g − 1)}`.
pub fn quasi_determinant(g: &FqMatrix) -> i32 {
    if g.eig_dim(1) % 2 == 0 {
        1
    } else {
        -1
    }
}

impl GroupElement {
    /// Checks every flag directly on the matrix.
    pub fn certify(space: &QuadraticSpace, matrix: FqMatrix) -> Self {
        let preserves_form = preserves_form(space, &matrix);
        let preserves_q = !space.has_quadratic_form() || (preserves_form && preserves_quad(space, &matrix));
        let in_omega = preserves_form
            && preserves_q
            && match space.kind() {
                Kind::Symplectic => true,
                _ if space.field().is_char2() => quasi_determinant(&matrix) == 1,
                _ => matrix.det() == 1,
            };
        GroupElement { matrix, certified: Certified { preserves_form, preserves_q, in_omega } }
    }

    pub fn is_member(&self) -> bool {
        self.certified.preserves_form && self.certified.preserves_q && self.certified.in_omega
    }

    /// Certifies and fails unless the element lies in the target group.
    pub fn member(space: &QuadraticSpace, matrix: FqMatrix) -> Result<Self> {
        let g = GroupElement::certify(space, matrix);
        if g.is_member() {
            Ok(g)
        } else {
            Err(Error::check(format!("{} is not in {} ({:?})", g.matrix, space.name(), g.certified)))
        }
    }
}

/// `gᵀ G g = G`.
pub fn preserves_form(space: &QuadraticSpace, g: &FqMatrix) -> bool {
    let gram = space.gram();
    g.rows() == gram.rows() && g.is_square() && g.transpose().mul(gram).mul(g) == *gram
}

/// `Q(g b_i) = Q(b_i)` on the basis; with the bilinear form preserved this
/// gives `Q(gv) = Q(v)` for all `v`.
pub fn preserves_quad(space: &QuadraticSpace, g: &FqMatrix) -> bool {
    (0..space.dim()).all(|i| space.quad(&g.column(i)) == space.quad(&space.basis_vector(i)))
}

/// `x ↦ x + λ (x, v) v`.
pub fn transvection(space: &QuadraticSpace, v: &[Elem], lambda: Elem) -> FqMatrix {
    let f = space.field();
    let gv = space.gram().apply(v);
    let d = space.dim();
    let mut m = FqMatrix::identity(f.clone(), d);
    for a in 0..d {
        for b in 0..d {
            let t = f.mul(lambda, f.mul(v[a], gv[b]));
            if t != 0 {
                m.set(a, b, f.add(m.get(a, b), t));
            }
        }
    }
    m
}

/// Eichler (Siegel) transformation for singular `u` and `v ⊥ u`:
/// `x ↦ x + (x, u) v − (x, v) u − Q(v) (x, u) u`.
pub fn eichler(space: &QuadraticSpace, u: &[Elem], v: &[Elem]) -> FqMatrix {
    let f = space.field();
    let gu = space.gram().apply(u);
    let gv = space.gram().apply(v);
    let qv = space.quad(v);
    let d = space.dim();
    let mut m = FqMatrix::identity(f.clone(), d);
    for a in 0..d {
        for b in 0..d {
            let t = f.sub(
                f.sub(f.mul(v[a], gu[b]), f.mul(u[a], gv[b])),
                f.mul(qv, f.mul(u[a], gu[b])),
            );
            if t != 0 {
                m.set(a, b, f.add(m.get(a, b), t));
            }
        }
    }
    m
}

/// Orthogonal reflection `x ↦ x − (x, v) Q(v)^{−1} v` for nonsingular `v`.
pub fn reflection(space: &QuadraticSpace, v: &[Elem]) -> Result<FqMatrix> {
    let f = space.field();
    let qv = space.quad(v);
    if qv == 0 {
        return Err(Error::invalid("reflection needs a nonsingular vector"));
    }
    Ok(transvection(space, v, f.neg(f.inv(qv))))
}

/// `1, α, …, α^{e−1}` for a primitive `α`: an additive basis of `F_q`
/// over the prime field.
fn scalar_basis(space: &QuadraticSpace) -> Vec<Elem> {
    let f = space.field();
    let a = f.primitive();
    (0..f.e()).map(|i| f.pow(a, i as u64)).collect()
}

/// Generators of the target group: transvections along basis vectors and
/// sums of two basis vectors for `Sp`, Eichler transformations along
/// `e_i, f_i` for orthogonal kinds.
pub fn generators(space: &QuadraticSpace) -> Result<Vec<GroupElement>> {
    let d = space.dim();
    let f = space.field();
    let scalars = scalar_basis(space);
    let mut out = Vec::new();
    match space.kind() {
        Kind::Symplectic => {
            let mut dirs: Vec<Vec<Elem>> = (0..d).map(|i| space.basis_vector(i)).collect();
            for i in 0..d {
                for j in i + 1..d {
                    let mut v = space.basis_vector(i);
                    v[j] = 1;
                    dirs.push(v);
                }
            }
            for v in &dirs {
                for &l in &scalars {
                    out.push(GroupElement::member(space, transvection(space, v, l))?);
                }
            }
        }
        _ => {
            let singular: Vec<usize> = space.symplectic_pairs().iter().filter(|&&(e, _)| {
                space.quad(&space.basis_vector(e)) == 0
            }).flat_map(|&(e, fi)| [e, fi]).collect();
            for &ui in &singular {
                let u = space.basis_vector(ui);
                for wi in 0..d {
                    let w = space.basis_vector(wi);
                    if wi == ui || space.bilinear(&u, &w) != 0 {
                        continue;
                    }
                    for &l in &scalars {
                        let v: Vec<Elem> = w.iter().map(|&x| f.mul(x, l)).collect();
                        out.push(GroupElement::member(space, eichler(space, &u, &v))?);
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::invalid(format!("{} has no generators of the implemented families", space.name())));
    }
    Ok(out)
}

/// A seeded random word of the given length in the generators and their
/// inverses.
pub fn random_word<R: Rng + ?Sized>(
    space: &QuadraticSpace,
    gens: &[GroupElement],
    inverses: &[FqMatrix],
    length: usize,
    rng: &mut R,
) -> FqMatrix {
    let mut g = FqMatrix::identity(space.field().clone(), space.dim());
    for _ in 0..length {
        let k = rng.random_range(0..2 * gens.len());
        let h = if k < gens.len() { &gens[k].matrix } else { &inverses[k - gens.len()] };
        g = g.mul(h);
    }
    g
}

/// `count` elements, each a random word whose RNG stream is determined by
/// `(seed, index)`, so the output does not depend on the worker count.
pub fn sample(space: &QuadraticSpace, count: usize, word_length: usize, seed: u64) -> Result<Vec<GroupElement>> {
    let gens = generators(space)?;
    let inverses: Vec<FqMatrix> = gens
        .iter()
        .map(|g| g.matrix.inverse().ok_or_else(|| Error::check("singular generator")))
        .collect::<Result<_>>()?;
    (0..count)
        .into_par_iter()
        .map(|i| {
            let g = sample_one(space, &gens, &inverses, word_length, seed, i as u64);
            GroupElement::member(space, g)
        })
        .collect()
}

pub(crate) fn sample_one(
    space: &QuadraticSpace,
    gens: &[GroupElement],
    inverses: &[FqMatrix],
    word_length: usize,
    seed: u64,
    index: u64,
) -> FqMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    random_word(space, gens, inverses, word_length, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    /// Size of the group generated, by breadth-first closure.
    fn closure_size(space: &QuadraticSpace, limit: usize) -> usize {
        let gens = generators(space).unwrap();
        let id = FqMatrix::identity(space.field().clone(), space.dim());
        let mut seen = HashSet::from([id.data().to_vec()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for h in &gens {
                let gh = g.mul(&h.matrix);
                if seen.insert(gh.data().to_vec()) {
                    assert!(seen.len() <= limit, "closure exceeded {limit}");
                    queue.push_back(gh);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn generators_generate_the_target_group() {
        for (kind, n, q) in [
            (Kind::Symplectic, 2, 2),
            (Kind::Symplectic, 2, 3),
            (Kind::Symplectic, 1, 4),
            (Kind::OrthogonalPlus, 3, 2),
            (Kind::OrthogonalMinus, 3, 2),
            (Kind::OrthogonalMinus, 2, 2),
            (Kind::OrthogonalPlus, 2, 3),
            (Kind::OrthogonalMinus, 2, 3),
            (Kind::OrthogonalOdd, 2, 3),
        ] {
            let s = QuadraticSpace::new(kind, n, q).unwrap();
            let order: usize = s.group_order().try_into().unwrap();
            assert_eq!(closure_size(&s, order), order, "{}", s.name());
        }
    }

    #[test]
    fn generators_preserve_forms() {
        for kind in [Kind::Symplectic, Kind::OrthogonalPlus, Kind::OrthogonalMinus] {
            for q in [2, 3, 4] {
                let s = QuadraticSpace::new(kind, 5, q).unwrap();
                for g in generators(&s).unwrap() {
                    assert!(g.is_member());
                    assert!(preserves_form(&s, &g.matrix));
                }
            }
        }
        let s = QuadraticSpace::new(Kind::OrthogonalOdd, 5, 3).unwrap();
        assert!(generators(&s).unwrap().iter().all(|g| g.matrix.det() == 1));
    }

    #[test]
    fn reflections_leave_omega() {
        let s = QuadraticSpace::new(Kind::OrthogonalPlus, 5, 2).unwrap();
        let mut v = s.basis_vector(0);
        v[5] = 1;
        assert_eq!(s.quad(&v), 1);
        let r = reflection(&s, &v).unwrap();
        assert_eq!(r.eig_dim(1), 9);
        assert_eq!(quasi_determinant(&r), -1);
        let g = GroupElement::certify(&s, r);
        assert!(g.certified.preserves_form && g.certified.preserves_q && !g.certified.in_omega);
        let id = FqMatrix::identity(s.field().clone(), 10);
        assert_eq!(quasi_determinant(&id), 1);
    }

    #[test]
    fn quasi_determinant_is_multiplicative() {
        let s = QuadraticSpace::new(Kind::OrthogonalMinus, 5, 2).unwrap();
        let samples = sample(&s, 20, 20, 9).unwrap();
        let mut v = s.basis_vector(0);
        v[4] = 1;
        let r = reflection(&s, &v).unwrap();
        let odd: Vec<FqMatrix> = samples.iter().map(|g| g.matrix.mul(&r)).collect();
        for (i, a) in odd.iter().enumerate() {
            for b in odd.iter().skip(i).take(3).chain(samples.iter().map(|g| &g.matrix).take(3)) {
                assert_eq!(quasi_determinant(&a.mul(b)), quasi_determinant(a) * quasi_determinant(b));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_certified() {
        let s = QuadraticSpace::new(Kind::OrthogonalPlus, 5, 2).unwrap();
        let a = sample(&s, 30, WORD_LENGTH, 42).unwrap();
        let b = sample(&s, 30, WORD_LENGTH, 42).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.iter().all(|g| quasi_determinant(&g.matrix) == 1));
        let supports: HashSet<usize> = a.iter().map(|g| g.matrix.support().unwrap()).collect();
        assert!(supports.len() >= 2, "{supports:?}");
        let c = sample(&s, 30, WORD_LENGTH, 43).unwrap();
        assert_ne!(a, c);
    }
}
