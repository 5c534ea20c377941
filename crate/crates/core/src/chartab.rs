//! Exact character tables by the Dixon–Schneider method.
//!
//! The class matrices `M_j[i][l] = a[j][i][l]` act on `F_p^k` for a prime
//! `p ≡ 1 (mod exponent)` with `p > 2|G|`. Their common eigenvectors,
//! normalised to 1 at the identity class, are the central characters
//! `ω_χ(C_l) = m_l·χ(g_l)/χ(1)`. Degrees follow from
//! `Σ_l ω(C_l)·ω(C_l⁻¹)/m_l = |G|/χ(1)²`, and each value is lifted to a
//! cyclotomic integer by counting eigenvalue multiplicities of `ρ(g)`.

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::{ConjugacyClasses, StructureConstants};
use crate::cyclotomic::{Cyclotomic, CyclotomicFraction};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::modp::{self, Matrix};
use crate::subgroup::Subgroup;

/// Random combinations tried when the class matrices alone fail to split
/// every eigenspace.
const FALLBACK_ATTEMPTS: usize = 32;

#[derive(Debug, Clone)]
pub struct CharacterTable {
    order: usize,
    modulus: usize,
    prime: u64,
    class_sizes: Vec<usize>,
    class_reps: Vec<usize>,
    inverse_class: Vec<usize>,
    values: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
    kernels: Vec<Subgroup>,
}

impl CharacterTable {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Root-of-unity order shared by all values (the group exponent).
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// The prime used for the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Number of irreducible characters, equal to the number of classes.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, character: usize, class: usize) -> &Cyclotomic {
        &self.values[character][class]
    }

    pub fn row(&self, character: usize) -> &[Cyclotomic] {
        &self.values[character]
    }

    pub fn degree(&self, character: usize) -> u64 {
        self.degrees[character]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn class_reps(&self) -> &[usize] {
        &self.class_reps
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }

    pub fn kernels(&self) -> &[Subgroup] {
        &self.kernels
    }

    /// True when every value is a rational integer.
    pub fn is_integral(&self) -> bool {
        self.values.iter().flatten().all(|v| v.as_integer().is_some())
    }

    /// Checks both orthogonality relations and `Σ χ(1)² = |G|` exactly.
    pub fn check_orthogonality(&self) -> Result<()> {
        let k = self.len();
        let n = self.order as i64;
        let e = self.modulus;
        let conj: Vec<Vec<Cyclotomic>> = self.values.iter().map(|r| r.iter().map(Cyclotomic::conj).collect()).collect();
        for i in 0..k {
            for j in i..k {
                let mut acc = vec![0i64; e];
                for l in 0..k {
                    Cyclotomic::mul_acc(&mut acc, &self.values[i][l], &conj[j][l], self.class_sizes[l] as i64);
                }
                let sum = Cyclotomic::from_coeffs(e, &acc);
                let expected = if i == j { n } else { 0 };
                if !sum.is_integer(expected) {
                    return Err(Error::LiftFailure(format!("rows {i} and {j} are not orthogonal")));
                }
            }
        }
        for l in 0..k {
            for m in l..k {
                let mut acc = vec![0i64; e];
                for i in 0..k {
                    Cyclotomic::mul_acc(&mut acc, &self.values[i][l], &conj[i][m], 1);
                }
                let sum = Cyclotomic::from_coeffs(e, &acc);
                let expected = if l == m { n / self.class_sizes[l] as i64 } else { 0 };
                if !sum.is_integer(expected) {
                    return Err(Error::LiftFailure(format!("columns {l} and {m} are not orthogonal")));
                }
            }
        }
        let squares: u64 = self.degrees.iter().map(|d| d * d).sum();
        if squares != self.order as u64 {
            return Err(Error::LiftFailure(format!("degree squares sum to {squares}")));
        }
        Ok(())
    }
}

pub fn character_table(g: &Group, cc: &ConjugacyClasses, sc: &StructureConstants) -> Result<CharacterTable> {
    character_table_with_seed(g, cc, sc, 0)
}

/// As [`character_table`], with the seed for the random-combination fallback.
pub fn character_table_with_seed(
    g: &Group,
    cc: &ConjugacyClasses,
    sc: &StructureConstants,
    seed: u64,
) -> Result<CharacterTable> {
    let n = g.order();
    let k = cc.count();
    let e = g.exponent();
    let p = modp::dixon_prime(e as u64, 2 * n as u64);
    let z = modp::pow(modp::primitive_root(p), (p - 1) / e as u64, p);

    let class_matrices: Vec<Matrix> = (0..k)
        .map(|j| (0..k).map(|i| (0..k).map(|l| sc.get(j, i, l) % p).collect()).collect())
        .collect();
    let eigenvectors = common_eigenvectors(&class_matrices, p, seed)?;

    let sizes = cc.sizes();
    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::with_capacity(k);
    for w in eigenvectors {
        let mut s = 0;
        for l in 0..k {
            let term = modp::mul(w[l], w[cc.inverse_class(l)], p);
            s = modp::add(s, modp::mul(term, modp::inv(sizes[l] as u64, p), p), p);
        }
        if s == 0 {
            return Err(Error::LiftFailure("degenerate central character".into()));
        }
        let target = modp::mul(n as u64, modp::inv(s, p), p);
        let degree = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % p == target)
            .ok_or_else(|| Error::LiftFailure("no integer degree fits".into()))?;
        let mod_values: Vec<u64> = (0..k)
            .map(|l| modp::mul(modp::mul(w[l], degree, p), modp::inv(sizes[l] as u64, p), p))
            .collect();
        let values = (0..k)
            .map(|l| lift_value(g, cc, &mod_values, l, degree, p, z))
            .collect::<Result<Vec<_>>>()?;
        rows.push((degree, values));
    }

    let is_principal = |row: &[Cyclotomic]| row.iter().all(|v| v.is_integer(1));
    rows.sort_by(|(da, va), (db, vb)| {
        (da, !is_principal(va), va).cmp(&(db, !is_principal(vb), vb))
    });

    let kernels = rows
        .iter()
        .map(|(d, vals)| {
            let mut members = FixedBitSet::with_capacity(n);
            for (l, v) in vals.iter().enumerate() {
                if v.is_integer(*d as i64) {
                    members.extend(cc.members(l).iter().copied());
                }
            }
            Subgroup::from_closed_set(g, members)
        })
        .collect();
    let (degrees, values) = rows.into_iter().unzip();
    let table = CharacterTable {
        order: n,
        modulus: e,
        prime: p,
        class_sizes: sizes,
        class_reps: cc.reps(),
        inverse_class: (0..k).map(|l| cc.inverse_class(l)).collect(),
        values,
        degrees,
        kernels,
    };
    table.check_orthogonality()?;
    Ok(table)
}

/// Counts how often each `o`-th root of unity occurs as an eigenvalue of
/// `ρ(g)`, where `o` is the order of `g`, and rebuilds `χ(g)` from those counts.
fn lift_value(
    g: &Group,
    cc: &ConjugacyClasses,
    mod_values: &[u64],
    class: usize,
    degree: u64,
    p: u64,
    z: u64,
) -> Result<Cyclotomic> {
    let e = g.exponent();
    let rep = cc.rep(class);
    let o = g.element_order(rep);
    let step = e / o;
    let zo = modp::pow(z, step as u64, p);
    let mut x = g.identity();
    let powers: Vec<u64> = (0..o)
        .map(|_| {
            let v = mod_values[cc.class_of(x)];
            x = g.mul(x, rep);
            v
        })
        .collect();
    let o_inv = modp::inv(o as u64, p);
    let mut coeffs = vec![0i64; e];
    let mut total = 0u64;
    for t in 0..o {
        let zt_inv = modp::inv(modp::pow(zo, t as u64, p), p);
        let mut acc = 0;
        let mut root = 1;
        for &v in &powers {
            acc = modp::add(acc, modp::mul(v, root, p), p);
            root = modp::mul(root, zt_inv, p);
        }
        let count = modp::mul(acc, o_inv, p);
        if count > degree {
            return Err(Error::LiftFailure(format!("multiplicity {count} exceeds degree {degree}")));
        }
        total += count;
        coeffs[t * step] = count as i64;
    }
    let value = Cyclotomic::from_coeffs(e, &coeffs);
    if total != degree || value.to_mod_p(p, z) != mod_values[class] {
        return Err(Error::LiftFailure(format!("inconsistent lift at class {class}")));
    }
    Ok(value)
}

/// One-dimensional common eigenspaces of the class matrices, each scaled to 1
/// in coordinate 0.
fn common_eigenvectors(matrices: &[Matrix], p: u64, seed: u64) -> Result<Vec<Vec<u64>>> {
    let k = matrices.len();
    let identity: Matrix = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    for m in matrices.iter().skip(1) {
        spaces = split_all(spaces, m, p)?;
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while spaces.iter().any(|s| s.len() > 1) {
        if attempts == FALLBACK_ATTEMPTS {
            return Err(Error::LiftFailure("eigenspaces did not split".into()));
        }
        attempts += 1;
        let coefs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        let combo: Matrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|l| matrices.iter().zip(&coefs).fold(0, |acc, (m, &c)| modp::add(acc, modp::mul(c, m[i][l], p), p)))
                    .collect()
            })
            .collect();
        spaces = split_all(spaces, &combo, p)?;
    }
    spaces
        .into_iter()
        .map(|mut s| {
            let v = s.pop().expect("one-dimensional space");
            if v[0] == 0 {
                return Err(Error::LiftFailure("eigenvector vanishes at the identity class".into()));
            }
            let scale = modp::inv(v[0], p);
            Ok(v.into_iter().map(|x| modp::mul(x, scale, p)).collect())
        })
        .collect()
}

fn split_all(spaces: Vec<Matrix>, m: &Matrix, p: u64) -> Result<Vec<Matrix>> {
    let mut out = Vec::with_capacity(spaces.len());
    for space in spaces {
        if space.len() == 1 {
            out.push(space);
        } else {
            out.extend(split(&space, m, p)?);
        }
    }
    Ok(out)
}

/// Splits an invariant subspace (rows in reduced echelon form) into the
/// eigenspaces of `m` restricted to it.
fn split(space: &Matrix, m: &Matrix, p: u64) -> Result<Vec<Matrix>> {
    let d = space.len();
    let pivots: Vec<usize> =
        space.iter().map(|row| row.iter().position(|&x| x != 0).expect("nonzero basis row")).collect();
    // restricted[s][r] = coordinate s of m·b_r
    let images: Vec<Vec<u64>> = space.iter().map(|b| modp::mat_vec(m, b, p)).collect();
    let restricted: Matrix = (0..d).map(|s| (0..d).map(|r| images[r][pivots[s]]).collect()).collect();
    let poly = modp::charpoly(&restricted, p);
    let mut parts = Vec::new();
    let mut dims = 0;
    for lambda in modp::roots(&poly, p) {
        let shifted: Matrix = (0..d)
            .map(|s| (0..d).map(|r| if s == r { modp::sub(restricted[s][r], lambda, p) } else { restricted[s][r] }).collect())
            .collect();
        let coords = modp::nullspace(&shifted, d, p);
        let mut vectors: Matrix = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; m.len()];
                for (coef, b) in c.iter().zip(space) {
                    if *coef != 0 {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = modp::add(*x, modp::mul(*coef, y, p), p);
                        }
                    }
                }
                v
            })
            .collect();
        modp::rref(&mut vectors, p);
        dims += vectors.len();
        parts.push(vectors);
    }
    if dims != d {
        return Err(Error::LiftFailure("class matrix is not diagonalisable on a subspace".into()));
    }
    Ok(parts)
}

pub fn kernel(ct: &CharacterTable, character: usize) -> &Subgroup {
    &ct.kernels[character]
}

/// For each class `l`, the characters with `χ(g_l) ≠ χ(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSupport {
    sets: Vec<FixedBitSet>,
}

impl IdempotentSupport {
    pub fn class_count(&self) -> usize {
        self.sets.len()
    }

    pub fn get(&self, class: usize) -> &FixedBitSet {
        &self.sets[class]
    }

    /// Sorted character indices in `E` for a class.
    pub fn characters(&self, class: usize) -> Vec<usize> {
        self.sets[class].ones().collect()
    }
}

pub fn idempotent_supports(ct: &CharacterTable) -> IdempotentSupport {
    let k = ct.len();
    let sets = (0..k)
        .map(|l| {
            let mut set = FixedBitSet::with_capacity(k);
            for i in 0..k {
                if !ct.value(i, l).is_integer(ct.degree(i) as i64) {
                    set.insert(i);
                }
            }
            set
        })
        .collect();
    IdempotentSupport { sets }
}

/// Coefficients of `e_χ` on the class sums: `χ(1)·χ(g_l⁻¹)/|G|` on `Ĉ_l`.
pub fn central_idempotent(ct: &CharacterTable, character: usize) -> Vec<CyclotomicFraction> {
    let d = ct.degree(character) as i64;
    (0..ct.len())
        .map(|l| CyclotomicFraction::new(ct.value(character, ct.inverse_class(l)).scale(d), ct.order() as i64))
        .collect()
}

/// Product of two central elements given by their class-sum coefficients.
pub fn class_algebra_product(
    sc: &StructureConstants,
    a: &[CyclotomicFraction],
    b: &[CyclotomicFraction],
) -> Vec<CyclotomicFraction> {
    let k = sc.class_count();
    let modulus = a.first().map_or(1, |x| x.numerator().modulus());
    let mut out = vec![CyclotomicFraction::zero(modulus); k];
    for i in (0..k).filter(|&i| !a[i].is_zero()) {
        for j in (0..k).filter(|&j| !b[j].is_zero()) {
            let ab = &a[i] * &b[j];
            for (l, &c) in sc.product(i, j).iter().enumerate() {
                if c != 0 {
                    out[l] = &out[l] + &ab.scale(c as i64);
                }
            }
        }
    }
    out
}
