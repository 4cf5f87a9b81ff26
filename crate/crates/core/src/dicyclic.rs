//! Generalised dicyclic groups `Dic(A, y, x) = ⟨A, x | x² = y, aˣ = a⁻¹⟩`.
//!
//! Every element is written uniquely as `a·xᵉ` with `a ∈ A`, `ε ∈ {0,1}`.
//! The presentation forces the product
//!
//! ```text
//! (a, δ)(b, ε) = (a · b^((-1)^δ) · y^(δε), δ ⊕ ε)
//! ```
//!
//! which is the only multiplication rule used anywhere in the crate.
//!
//! Elements are numbered `(a, 0)` in the lexicographic order of `A`, then
//! `(a, 1)` in the same order, so index `i < |A|` lies in `A` and index
//! `|A| + j` is `element_at_A(j)·x`.
//!
//! We use the dicyclic reading for the counting formula's group family even
//! where it is stated for "generalised dihedral" groups: every other
//! statement about `R` is about generalised dicyclic groups.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::abelian::{AbelianElement, AbelianGroup};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Multiplication tables are cached only up to this order.
const TABLE_MAX_ORDER: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DicyclicElement {
    pub a: AbelianElement,
    pub eps: bool,
}

impl fmt::Display for DicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, u8::from(self.eps))
    }
}

#[derive(Debug)]
pub struct DicyclicGroup {
    base: AbelianGroup,
    y: AbelianElement,
    tables: OnceLock<Tables>,
}

#[derive(Debug)]
struct Tables {
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl Clone for DicyclicGroup {
    fn clone(&self) -> Self {
        DicyclicGroup {
            base: self.base.clone(),
            y: self.y.clone(),
            tables: OnceLock::new(),
        }
    }
}

impl PartialEq for DicyclicGroup {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.y == other.y
    }
}

impl Eq for DicyclicGroup {}

impl DicyclicGroup {
    /// Requires `|A|` even, `exp(A) > 2`, and `y` of order exactly 2.
    pub fn new(base: AbelianGroup, y: AbelianElement) -> Result<Self> {
        base.check(&y)?;
        if !base.order().is_multiple_of(2) {
            return Err(Error::domain(format!("|{base}| = {} is odd", base.order())));
        }
        if base.exponent() <= 2 {
            return Err(Error::domain(format!("{base} has exponent at most 2")));
        }
        if !base.is_involution(&y) {
            return Err(Error::domain(format!("y = {y} does not have order 2 in {base}")));
        }
        Ok(DicyclicGroup {
            base,
            y,
            tables: OnceLock::new(),
        })
    }

    /// `Q8 × C2^ℓ` presented as `Dic(C4 × C2^ℓ, (2,0,…,0))`.
    pub fn q8e(ell: usize) -> Self {
        let mut factors = vec![4];
        factors.extend(std::iter::repeat_n(2, ell));
        let base = AbelianGroup::new(factors).expect("valid factors");
        let mut coords = vec![0; ell + 1];
        coords[0] = 2;
        let y = base.element(&coords).expect("valid y");
        DicyclicGroup::new(base, y).expect("C4 x C2^l satisfies the preconditions")
    }

    pub fn base(&self) -> &AbelianGroup {
        &self.base
    }

    pub fn y(&self) -> &AbelianElement {
        &self.y
    }

    /// n = 2|A|.
    pub fn order(&self) -> usize {
        2 * self.base.order()
    }

    /// Canonical spec string, e.g. `dic:C4xC2:y=2,0`.
    pub fn spec(&self) -> String {
        let ys: Vec<String> = self.y.coords().iter().map(|c| c.to_string()).collect();
        format!("dic:{}:y={}", self.base, ys.join(","))
    }

    pub fn identity(&self) -> DicyclicElement {
        DicyclicElement {
            a: self.base.identity(),
            eps: false,
        }
    }

    pub fn x(&self) -> DicyclicElement {
        DicyclicElement {
            a: self.base.identity(),
            eps: true,
        }
    }

    pub fn element(&self, coords: &[u32], eps: bool) -> Result<DicyclicElement> {
        Ok(DicyclicElement {
            a: self.base.element(coords)?,
            eps,
        })
    }

    /// Standard generators: the basis of `A`, then `x`.
    pub fn generators(&self) -> Vec<DicyclicElement> {
        let mut gens: Vec<DicyclicElement> = (0..self.base.rank())
            .map(|i| DicyclicElement {
                a: self.base.basis(i),
                eps: false,
            })
            .collect();
        gens.push(self.x());
        gens
    }

    pub fn check(&self, u: &DicyclicElement) -> Result<()> {
        self.base.check(&u.a)
    }

    pub fn mul(&self, u: &DicyclicElement, v: &DicyclicElement) -> Result<DicyclicElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    pub(crate) fn mul_unchecked(&self, u: &DicyclicElement, v: &DicyclicElement) -> DicyclicElement {
        let base = &self.base;
        let b = if u.eps {
            base.inverse_unchecked(&v.a)
        } else {
            v.a.clone()
        };
        let mut a = base.mul_unchecked(&u.a, &b);
        if u.eps && v.eps {
            a = base.mul_unchecked(&a, &self.y);
        }
        DicyclicElement {
            a,
            eps: u.eps ^ v.eps,
        }
    }

    pub fn inv(&self, u: &DicyclicElement) -> Result<DicyclicElement> {
        self.check(u)?;
        Ok(self.inv_unchecked(u))
    }

    pub(crate) fn inv_unchecked(&self, u: &DicyclicElement) -> DicyclicElement {
        if u.eps {
            DicyclicElement {
                a: self.base.mul_unchecked(&u.a, &self.y),
                eps: true,
            }
        } else {
            DicyclicElement {
                a: self.base.inverse_unchecked(&u.a),
                eps: false,
            }
        }
    }

    pub fn index_of(&self, u: &DicyclicElement) -> Result<usize> {
        self.check(u)?;
        Ok(self.index_unchecked(u))
    }

    pub(crate) fn index_unchecked(&self, u: &DicyclicElement) -> usize {
        usize::from(u.eps) * self.base.order() + self.base.index_unchecked(&u.a)
    }

    pub fn element_at(&self, index: usize) -> DicyclicElement {
        let half = self.base.order();
        assert!(index < 2 * half, "element index {index} out of range");
        DicyclicElement {
            a: self.base.element_at(index % half),
            eps: index >= half,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = DicyclicElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    fn tables(&self) -> Option<&Tables> {
        if self.order() > TABLE_MAX_ORDER {
            return None;
        }
        Some(self.tables.get_or_init(|| {
            let n = self.order();
            let els: Vec<DicyclicElement> = self.elements().collect();
            let mut mul = Vec::with_capacity(n * n);
            for u in &els {
                for v in &els {
                    mul.push(self.index_unchecked(&self.mul_unchecked(u, v)) as u32);
                }
            }
            let inv = els
                .iter()
                .map(|u| self.index_unchecked(&self.inv_unchecked(u)) as u32)
                .collect();
            Tables { mul, inv }
        }))
    }

    /// Product on element indices.
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        match self.tables() {
            Some(t) => t.mul[i * self.order() + j] as usize,
            None => self.index_unchecked(&self.mul_unchecked(&self.element_at(i), &self.element_at(j))),
        }
    }

    pub fn inv_index(&self, i: usize) -> usize {
        match self.tables() {
            Some(t) => t.inv[i] as usize,
            None => self.index_unchecked(&self.inv_unchecked(&self.element_at(i))),
        }
    }

    /// m: elements of order at most 2, identity included. Every `(a,1)`
    /// squares to `y ≠ 1`, so this is exactly `|A₂|`.
    pub fn element_order_le2_count(&self) -> usize {
        let id = self.identity();
        self.elements()
            .filter(|u| self.mul_unchecked(u, u) == id)
            .count()
    }

    /// Right multiplication `u ↦ u·g` as a permutation of element indices.
    pub fn right_translation(&self, g: &DicyclicElement) -> Permutation {
        let gi = self.index_unchecked(g);
        Permutation::from_images_unchecked((0..self.order()).map(|u| self.mul_index(u, gi)).collect())
    }

    /// ι: fixes `A` pointwise and inverts every element of `R∖A`, i.e.
    /// `(a,0) ↦ (a,0)` and `(a,1) ↦ (a·y,1)`.
    pub fn iota(&self) -> Permutation {
        Permutation::from_images_unchecked(
            (0..self.order())
                .map(|u| if u < self.base.order() { u } else { self.inv_index(u) })
                .collect(),
        )
    }

    /// True iff this presentation is isomorphic to `Q8 × C2^ℓ`: `A ≅ C4 × C2^ℓ`
    /// (exponent 4 with `|A₂| = |A|/2`) and `y` is the only non-identity square.
    pub fn is_q8_x_c2l(&self) -> bool {
        let a = &self.base;
        if a.exponent() != 4 || 2 * a.involution_closure_count() != a.order() {
            return false;
        }
        let squares: BTreeSet<AbelianElement> = a
            .squares()
            .into_iter()
            .filter(|s| !a.is_identity(s))
            .collect();
        squares.len() == 1 && squares.contains(&self.y)
    }
}

impl fmt::Display for DicyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl FromStr for DicyclicGroup {
    type Err = Error;

    /// Accepts `dic:<base>:y=<c1>,<c2>,...` or the shorthand `q8e:<ℓ>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("q8e:") {
            let ell: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(s, "q8e shorthand needs a non-negative integer"))?;
            if ell > 16 {
                return Err(Error::parse(s, "q8e rank above 16 is not supported"));
            }
            return Ok(DicyclicGroup::q8e(ell));
        }
        let rest = lower
            .strip_prefix("dic:")
            .ok_or_else(|| Error::parse(s, "expected `dic:<base>:y=<coords>` or `q8e:<l>`"))?;
        let (base_str, y_str) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::parse(s, "missing `:y=` part"))?;
        let y_str = y_str
            .trim()
            .strip_prefix("y=")
            .ok_or_else(|| Error::parse(s, "expected `y=` after the base group"))?;
        let base: AbelianGroup = base_str.parse()?;
        let coords = y_str
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse(s, "y coordinates must be non-negative integers"))?;
        let y = base.element(&coords)?;
        DicyclicGroup::new(base, y)
    }
}
