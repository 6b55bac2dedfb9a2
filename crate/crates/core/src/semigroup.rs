//! The monoid T_V of linear transformations of V = GF(p)^n and its
//! subsemigroup Sing(V): products, Green's relations, idempotents and
//! regularity.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::Mat;
use crate::subspace::{check_dim, Side, Subspace};
use crate::table::SemigroupTable;

/// Upper bound on `p^(n^2)` for full enumerations of T_V.
pub const MAX_ENDOS: u64 = 1 << 20;

/// A linear transformation of V acting on row vectors, with its null space
/// and image cached.
#[derive(Debug, Clone)]
pub struct Endo {
    mat: Mat,
    kernel: Subspace,
    image: Subspace,
}

impl PartialEq for Endo {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for Endo {}

impl Hash for Endo {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state)
    }
}

impl PartialOrd for Endo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Endo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mat.cmp(&other.mat)
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.mat.fmt(f)
    }
}

impl Serialize for Endo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.mat.to_string())
    }
}

impl Endo {
    pub fn new(mat: Mat) -> Result<Endo> {
        if !mat.is_square() {
            return Err(Error::ShapeError(format!("{}x{} is not square", mat.rows(), mat.cols())));
        }
        check_dim(mat.rows())?;
        Ok(Endo::from_square(mat))
    }

    fn from_square(mat: Mat) -> Endo {
        let kernel = Subspace::span(&mat.left_kernel_basis(), Side::Primal);
        let image = Subspace::span(&mat, Side::Primal);
        Endo { mat, kernel, image }
    }

    pub fn parse(s: &str, p: Prime) -> Result<Endo> {
        Endo::new(Mat::parse(s, p)?)
    }

    pub fn identity(n: usize, p: Prime) -> Endo {
        Endo::from_square(Mat::identity(p, n))
    }

    pub fn zero(n: usize, p: Prime) -> Endo {
        Endo::from_square(Mat::zeros(p, n, n))
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn prime(&self) -> Prime {
        self.mat.prime()
    }

    /// Null space `N_α = {v : vα = 0}`.
    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    /// Image `Vα`.
    pub fn image(&self) -> &Subspace {
        &self.image
    }

    pub fn rank(&self) -> usize {
        self.image.dim()
    }

    pub fn is_singular(&self) -> bool {
        self.rank() < self.n()
    }

    /// `self` followed by `other`. Panics if the two act on different spaces.
    pub fn mul(&self, other: &Endo) -> Endo {
        Endo::from_square(self.mat.mul(&other.mat).expect("transformations of the same space"))
    }

    pub fn try_mul(&self, other: &Endo) -> Result<Endo> {
        Ok(Endo::from_square(self.mat.mul(&other.mat)?))
    }

    pub fn is_idempotent(&self) -> bool {
        self.mat.mul_unchecked(&self.mat) == self.mat
    }

    pub fn invert(&self) -> Result<Endo> {
        Ok(Endo::from_square(self.mat.invert()?))
    }

    pub fn transpose(&self) -> Endo {
        Endo::from_square(self.mat.transpose())
    }

    pub fn scale(&self, c: u8) -> Endo {
        Endo::from_square(self.mat.scale(c))
    }

    /// Index of the matrix in the lexicographic enumeration of T_V.
    pub fn code(&self) -> usize {
        let p = self.prime().as_usize();
        self.mat.entries().iter().fold(0, |acc, &v| acc * p + v as usize)
    }

    pub fn from_code(code: usize, n: usize, p: Prime) -> Endo {
        Endo::from_square(mat_from_code(code, n, p))
    }
}

fn mat_from_code(mut code: usize, n: usize, p: Prime) -> Mat {
    let q = p.as_usize();
    let mut data = vec![0u8; n * n];
    for slot in data.iter_mut().rev() {
        *slot = (code % q) as u8;
        code /= q;
    }
    Mat::from_raw(p, n, n, data)
}

fn endo_count(n: usize, p: Prime) -> Result<usize> {
    check_dim(n)?;
    let count = (p.get() as u64).checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if count > MAX_ENDOS {
        return Err(Error::TooLarge(format!("{count} transformations of GF({p})^{n}")));
    }
    Ok(count as usize)
}

/// Every transformation of GF(p)^n, in lexicographic order of entries.
pub fn all_endos(n: usize, p: Prime) -> Result<Vec<Endo>> {
    let count = endo_count(n, p)?;
    Ok((0..count).map(|c| Endo::from_code(c, n, p)).collect())
}

/// Sing(V): the non-invertible transformations.
pub fn singular_endos(n: usize, p: Prime) -> Result<Vec<Endo>> {
    Ok(all_endos(n, p)?.into_iter().filter(Endo::is_singular).collect())
}

/// GL(V): the invertible transformations.
pub fn invertible_endos(n: usize, p: Prime) -> Result<Vec<Endo>> {
    Ok(all_endos(n, p)?.into_iter().filter(|e| !e.is_singular()).collect())
}

/// |GL(n, p)| by the product formula.
pub fn general_linear_order(n: usize, p: u64) -> u64 {
    let pn = p.pow(n as u32);
    (0..n).map(|i| pn - p.pow(i as u32)).product()
}

/// Green's relations between two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GreenFlags {
    pub l: bool,
    pub r: bool,
    pub h: bool,
    pub d: bool,
}

/// Green's relations in T_V (or Sing(V)) from the image/kernel characterization:
/// L is equality of images, R equality of null spaces, D equality of rank.
pub fn green(a: &Endo, b: &Endo) -> GreenFlags {
    let l = a.image() == b.image();
    let r = a.kernel() == b.kernel();
    GreenFlags { l, r, h: l && r, d: a.rank() == b.rank() }
}

/// Green's relations computed from principal ideals by exhaustive
/// multiplication inside a given semigroup table.
#[derive(Debug, Clone)]
pub struct GreenOracle {
    left_class: Vec<usize>,
    right_class: Vec<usize>,
    lr_pairs: std::collections::HashSet<(usize, usize)>,
}

impl GreenOracle {
    pub fn new(table: &SemigroupTable) -> GreenOracle {
        let left_class = classify(&table.left_ideals());
        let right_class = classify(&table.right_ideals());
        let lr_pairs = left_class.iter().copied().zip(right_class.iter().copied()).collect();
        GreenOracle { left_class, right_class, lr_pairs }
    }

    pub fn flags(&self, a: usize, b: usize) -> GreenFlags {
        let l = self.left_class[a] == self.left_class[b];
        let r = self.right_class[a] == self.right_class[b];
        // a D b iff a L c R b for some c
        let d = self.lr_pairs.contains(&(self.left_class[a], self.right_class[b]));
        GreenFlags { l, r, h: l && r, d }
    }

    pub fn left_class(&self, a: usize) -> usize {
        self.left_class[a]
    }

    pub fn right_class(&self, a: usize) -> usize {
        self.right_class[a]
    }
}

/// Class ids in order of first appearance.
pub(crate) fn classify<K: Hash + Eq + Clone>(keys: &[K]) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k.clone()).or_insert(next)
        })
        .collect()
}

/// All idempotents of T_V (or of Sing(V) when `singular_only`).
pub fn idempotents(n: usize, p: Prime, singular_only: bool) -> Result<Vec<Endo>> {
    Ok(all_endos(n, p)?
        .into_iter()
        .filter(|e| e.is_idempotent() && (!singular_only || e.is_singular()))
        .collect())
}

/// The projection with null space `kernel` and image `image`.
pub fn idempotent_from(kernel: &Subspace, image: &Subspace) -> Result<Endo> {
    if kernel.side() != Side::Primal || !kernel.is_complement_of(image) {
        return Err(Error::NotADirectSum);
    }
    let p = kernel.prime();
    let n = kernel.ambient_dim();
    // v = x [N; W]  =>  v e = x [0; W]
    let stacked = kernel.basis().vstack(image.basis())?;
    let targets = Mat::zeros(p, kernel.dim(), n).vstack(image.basis())?;
    let e = stacked.invert()?.mul(&targets)?;
    Endo::new(e)
}

/// Indices of the regular elements of `elems` under `product`, each with the
/// first witness `b` (in element order) such that `a b a = a`.
pub fn regular_elements<T: PartialEq>(elems: &[T], product: impl Fn(&T, &T) -> T) -> Vec<(usize, usize)> {
    elems
        .iter()
        .enumerate()
        .filter_map(|(i, a)| elems.iter().position(|b| product(&product(a, b), a) == *a).map(|w| (i, w)))
        .collect()
}
