//! Finite abelian groups presented as direct products of cyclic groups.
//!
//! A group is stored exactly as given (`C4xC2` and `C2xC4` are different
//! presentations). Elements are residue vectors, ordered lexicographically
//! with the first coordinate most significant; that order is the element
//! numbering used by every downstream vertex set.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianElement {
    coords: Vec<u32>,
}

impl AbelianElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

impl fmt::Display for AbelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A subgroup held extensionally as a sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<AbelianElement>,
}

impl Subgroup {
    pub fn elements(&self) -> &[AbelianElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, u: &AbelianElement) -> bool {
        self.elements.binary_search(u).is_ok()
    }
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::domain(format!(
                "cyclic factor orders must be at least 2, got {d}"
            )));
        }
        let mut order: usize = 1;
        for &d in &factors {
            order = order
                .checked_mul(d as usize)
                .ok_or_else(|| Error::domain("group order overflows usize"))?;
        }
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        Ok(AbelianGroup {
            factors,
            strides,
            order,
        })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &d| acc.lcm(&(d as u64)))
    }

    pub fn identity(&self) -> AbelianElement {
        AbelianElement {
            coords: vec![0; self.rank()],
        }
    }

    /// Builds a validated element; coordinates must already be reduced.
    pub fn element(&self, coords: &[u32]) -> Result<AbelianElement> {
        let u = AbelianElement {
            coords: coords.to_vec(),
        };
        self.check(&u)?;
        Ok(u)
    }

    /// The `i`-th standard generator (1 in factor `i`, 0 elsewhere).
    pub fn basis(&self, i: usize) -> AbelianElement {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        AbelianElement { coords }
    }

    pub fn check(&self, u: &AbelianElement) -> Result<()> {
        if u.coords.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: u.coords.len(),
            });
        }
        for (&c, &d) in u.coords.iter().zip(&self.factors) {
            if c >= d {
                return Err(Error::CoordinateOutOfRange {
                    value: c,
                    modulus: d,
                });
            }
        }
        Ok(())
    }

    pub fn mul(&self, u: &AbelianElement, v: &AbelianElement) -> Result<AbelianElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    pub fn inverse(&self, u: &AbelianElement) -> Result<AbelianElement> {
        self.check(u)?;
        Ok(self.inverse_unchecked(u))
    }

    pub fn pow(&self, u: &AbelianElement, k: i64) -> Result<AbelianElement> {
        self.check(u)?;
        Ok(self.pow_unchecked(u, k))
    }

    pub(crate) fn mul_unchecked(&self, u: &AbelianElement, v: &AbelianElement) -> AbelianElement {
        let coords = u
            .coords
            .iter()
            .zip(&v.coords)
            .zip(&self.factors)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        AbelianElement { coords }
    }

    pub(crate) fn inverse_unchecked(&self, u: &AbelianElement) -> AbelianElement {
        let coords = u
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| (d - a) % d)
            .collect();
        AbelianElement { coords }
    }

    pub(crate) fn pow_unchecked(&self, u: &AbelianElement, k: i64) -> AbelianElement {
        let coords = u
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| (a as i64 * k).rem_euclid(d as i64) as u32)
            .collect();
        AbelianElement { coords }
    }

    pub fn square(&self, u: &AbelianElement) -> AbelianElement {
        self.pow_unchecked(u, 2)
    }

    pub fn is_identity(&self, u: &AbelianElement) -> bool {
        u.coords.iter().all(|&c| c == 0)
    }

    /// Order of an element: lcm over coordinates of d / gcd(c, d).
    pub fn element_order(&self, u: &AbelianElement) -> u64 {
        u.coords
            .iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&c, &d)| {
                let d = d as u64;
                acc.lcm(&(d / (c as u64).gcd(&d)))
            })
    }

    /// True iff `u` has order exactly 2.
    pub fn is_involution(&self, u: &AbelianElement) -> bool {
        self.check(u).is_ok() && self.element_order(u) == 2
    }

    pub fn index_of(&self, u: &AbelianElement) -> Result<usize> {
        self.check(u)?;
        Ok(self.index_unchecked(u))
    }

    pub(crate) fn index_unchecked(&self, u: &AbelianElement) -> usize {
        u.coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    /// Element with the given position in lexicographic order.
    pub fn element_at(&self, index: usize) -> AbelianElement {
        assert!(index < self.order, "element index {index} out of range");
        let coords = self
            .strides
            .iter()
            .zip(&self.factors)
            .map(|(&s, &d)| ((index / s) % d as usize) as u32)
            .collect();
        AbelianElement { coords }
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = AbelianElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    /// |A₂|, the number of elements whose square is the identity.
    pub fn involution_closure_count(&self) -> usize {
        self.factors
            .iter()
            .map(|&d| (d as usize).gcd(&2))
            .product()
    }

    pub fn squares(&self) -> BTreeSet<AbelianElement> {
        self.elements().map(|a| self.square(&a)).collect()
    }

    /// `{a : a² ∈ {b, b·y}}` for an involution `y`.
    pub fn square_fiber(&self, b: &AbelianElement, y: &AbelianElement) -> Result<Vec<AbelianElement>> {
        self.check(b)?;
        self.check(y)?;
        if !self.is_involution(y) {
            return Err(Error::domain(format!("{y} is not an involution")));
        }
        let by = self.mul_unchecked(b, y);
        Ok(self
            .elements()
            .filter(|a| {
                let sq = self.square(a);
                sq == *b || sq == by
            })
            .collect())
    }

    /// `{a : a ∉ U, a² ≠ y}` for a proper subgroup `U` and an involution `y`.
    pub fn outside_square_complement(
        &self,
        subgroup: &[AbelianElement],
        y: &AbelianElement,
    ) -> Result<Vec<AbelianElement>> {
        self.check(y)?;
        if !self.is_involution(y) {
            return Err(Error::domain(format!("{y} is not an involution")));
        }
        let u = self.validate_subgroup(subgroup)?;
        if u.len() == self.order {
            return Err(Error::domain("U must be a proper subgroup"));
        }
        Ok(self
            .elements()
            .filter(|a| !u.contains(a) && self.square(a) != *y)
            .collect())
    }

    /// Checks that the given set is closed under the group law and returns it sorted.
    pub fn validate_subgroup(&self, set: &[AbelianElement]) -> Result<Subgroup> {
        for u in set {
            self.check(u)?;
        }
        let elements: Vec<AbelianElement> =
            set.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let sg = Subgroup { elements };
        if !sg.contains(&self.identity()) {
            return Err(Error::domain("subgroup must contain the identity"));
        }
        for u in sg.elements() {
            for v in sg.elements() {
                if !sg.contains(&self.mul_unchecked(u, v)) {
                    return Err(Error::domain(format!(
                        "set is not closed under multiplication: {u}·{v}"
                    )));
                }
            }
        }
        Ok(sg)
    }

    /// The subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[AbelianElement]) -> Result<Subgroup> {
        for g in gens {
            self.check(g)?;
        }
        let idx: Vec<usize> = gens.iter().map(|g| self.index_unchecked(g)).collect();
        let mask = self.closure_mask(&[false].repeat(self.order), &idx);
        Ok(self.subgroup_from_mask(&mask))
    }

    /// Every subgroup of the group, found by closing each known subgroup
    /// under one extra element. Intended for desk-scale groups only.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut trivial = vec![false; self.order];
        trivial[0] = true;
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(trivial.clone());
        queue.push_back(trivial);
        while let Some(mask) = queue.pop_front() {
            for g in 0..self.order {
                if mask[g] {
                    continue;
                }
                let next = self.closure_mask(&mask, &[g]);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<Subgroup> = seen.iter().map(|m| self.subgroup_from_mask(m)).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn closure_mask(&self, start: &[bool], extra: &[usize]) -> Vec<bool> {
        let mut mask = start.to_vec();
        mask[0] = true;
        let mut members: Vec<usize> = (0..self.order).filter(|&i| mask[i]).collect();
        let mut frontier: Vec<usize> = extra.to_vec();
        while let Some(g) = frontier.pop() {
            if mask[g] {
                continue;
            }
            // `g` joins: multiply it by everything present, queue the new products.
            mask[g] = true;
            members.push(g);
            let ge = self.element_at(g);
            let snapshot = members.clone();
            for &h in &snapshot {
                let p = self.index_unchecked(&self.mul_unchecked(&ge, &self.element_at(h)));
                if !mask[p] {
                    frontier.push(p);
                }
            }
        }
        mask
    }

    fn subgroup_from_mask(&self, mask: &[bool]) -> Subgroup {
        Subgroup {
            elements: (0..self.order)
                .filter(|&i| mask[i])
                .map(|i| self.element_at(i))
                .collect(),
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C1");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "C{d}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Parses `C4xC2x...`, case-insensitively. A factor may carry a
    /// repetition suffix: `C2^3` is `C2xC2xC2`, and `C2^0` contributes nothing.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::parse(s, "empty group spec"));
        }
        let mut factors = Vec::new();
        for part in trimmed.split(['x', 'X']) {
            let part = part.trim();
            let body = part
                .strip_prefix('C')
                .or_else(|| part.strip_prefix('c'))
                .ok_or_else(|| Error::parse(s, format!("factor `{part}` must start with C")))?;
            let (order, reps) = match body.split_once('^') {
                Some((o, r)) => (o, r),
                None => (body, "1"),
            };
            let order: u32 = order
                .parse()
                .map_err(|_| Error::parse(s, format!("bad cyclic order in `{part}`")))?;
            let reps: usize = reps
                .parse()
                .map_err(|_| Error::parse(s, format!("bad repetition count in `{part}`")))?;
            if order < 2 {
                return Err(Error::parse(s, "cyclic orders must be at least 2"));
            }
            factors.extend(std::iter::repeat_n(order, reps));
        }
        AbelianGroup::new(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn mul_examples() {
        let c4c2 = g("C4xC2");
        let u = c4c2.element(&[1, 1]).unwrap();
        let v = c4c2.element(&[3, 1]).unwrap();
        assert_eq!(c4c2.mul(&u, &v).unwrap(), c4c2.identity());

        let c4 = g("C4");
        let one = c4.element(&[1]).unwrap();
        assert_eq!(c4.mul(&one, &one).unwrap().coords(), &[2]);

        let c6 = g("C6");
        let r = c6
            .mul(&c6.element(&[5]).unwrap(), &c6.element(&[4]).unwrap())
            .unwrap();
        assert_eq!(r.coords(), &[3]);
    }

    #[test]
    fn mul_dimension_mismatch() {
        let c4c2 = g("C4xC2");
        let c4 = g("C4");
        let bad = c4.element(&[1]).unwrap();
        assert!(matches!(
            c4c2.mul(&bad, &c4c2.identity()),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
        assert!(c4.element(&[4]).is_err());
    }

    #[test]
    fn parse_variants() {
        assert_eq!(g("c4XC2").factors(), &[4, 2]);
        assert_eq!(g("C4xC2^3").factors(), &[4, 2, 2, 2]);
        assert_eq!(g("C4xC2^0").factors(), &[4]);
        assert!("C1".parse::<AbelianGroup>().is_err());
        assert!("D4".parse::<AbelianGroup>().is_err());
        assert!("".parse::<AbelianGroup>().is_err());
        assert_eq!(g("C4xC2").to_string(), "C4xC2");
    }

    #[test]
    fn element_order_is_lexicographic() {
        let a = g("C3xC2");
        let els: Vec<_> = a.elements().map(|e| e.coords().to_vec()).collect();
        assert_eq!(
            els,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1]]
        );
        let mut sorted = a.elements().collect::<Vec<_>>();
        sorted.sort();
        assert_eq!(sorted, a.elements().collect::<Vec<_>>());
        for (i, e) in a.elements().enumerate() {
            assert_eq!(a.index_of(&e).unwrap(), i);
        }
    }

    #[test]
    fn involution_counts() {
        assert_eq!(g("C4xC2").involution_closure_count(), 4);
        assert_eq!(g("C2^5").involution_closure_count(), 32);
        assert_eq!(g("C6").involution_closure_count(), 2);
        assert_eq!(g("C9").involution_closure_count(), 1);
    }

    #[test]
    fn exponent_and_orders() {
        let a = g("C4xC6");
        assert_eq!(a.order(), 24);
        assert_eq!(a.exponent(), 12);
        assert_eq!(a.element_order(&a.element(&[2, 3]).unwrap()), 2);
        assert_eq!(a.element_order(&a.element(&[1, 2]).unwrap()), 12);
        assert!(a.is_involution(&a.element(&[0, 3]).unwrap()));
        assert!(!a.is_involution(&a.identity()));
    }

    #[test]
    fn square_fiber_c6() {
        let c6 = g("C6");
        let y = c6.element(&[3]).unwrap();
        let fiber = c6.square_fiber(&c6.identity(), &y).unwrap();
        let coords: Vec<_> = fiber.iter().map(|e| e.coords()[0]).collect();
        assert_eq!(coords, vec![0, 3]);
        assert!(fiber.len() * 3 <= 2 * 6);
    }

    #[test]
    fn square_fiber_c8() {
        // squares in C8: a ↦ 2a; 2a ∈ {2, 6} ⇔ a ∈ {1, 5, 3, 7}.
        let c8 = g("C8");
        let y = c8.element(&[4]).unwrap();
        let b = c8.element(&[2]).unwrap();
        let fiber = c8.square_fiber(&b, &y).unwrap();
        let coords: Vec<_> = fiber.iter().map(|e| e.coords()[0]).collect();
        assert_eq!(coords, vec![1, 3, 5, 7]);
        assert!(fiber.len() * 3 <= 2 * 8);
    }

    #[test]
    fn square_fiber_rejects_non_involution() {
        let c6 = g("C6");
        let not_inv = c6.element(&[2]).unwrap();
        assert!(matches!(
            c6.square_fiber(&c6.identity(), &not_inv),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn outside_square_complement_examples() {
        let c6 = g("C6");
        let y = c6.element(&[3]).unwrap();
        let trivial = [c6.identity()];
        assert_eq!(c6.outside_square_complement(&trivial, &y).unwrap().len(), 5);

        // U = <2> = {0,2,4}; outside: 1,3,5 with squares 2,0,4, none equal to 3.
        let u = c6.generated_subgroup(&[c6.element(&[2]).unwrap()]).unwrap();
        let x = c6.outside_square_complement(u.elements(), &y).unwrap();
        assert_eq!(x.len(), 3);
        assert!(x.len() * 4 >= 6);

        // C4xC4, U = <(1,0)>, y = (2,2) = (1,1)^2. Outside U: 12 elements; of
        // those, a² = (2,2) for a ∈ {(1,1),(1,3),(3,1),(3,3)}, so 8 remain.
        let c44 = g("C4xC4");
        let y = c44.element(&[2, 2]).unwrap();
        let u = c44.generated_subgroup(&[c44.element(&[1, 0]).unwrap()]).unwrap();
        let x = c44.outside_square_complement(u.elements(), &y).unwrap();
        assert_eq!(x.len(), 8);
    }

    #[test]
    fn outside_square_complement_errors() {
        let c6 = g("C6");
        let y = c6.element(&[3]).unwrap();
        let all: Vec<_> = c6.elements().collect();
        assert!(c6.outside_square_complement(&all, &y).is_err());
        let not_subgroup = [c6.identity(), c6.element(&[1]).unwrap()];
        assert!(c6.outside_square_complement(&not_subgroup, &y).is_err());
    }

    #[test]
    fn subgroup_enumeration_counts() {
        // Known subgroup counts: C6 has 4, C2xC2 has 5, C2^3 has 16, C4xC2 has 8.
        assert_eq!(g("C6").subgroups().len(), 4);
        assert_eq!(g("C2xC2").subgroups().len(), 5);
        assert_eq!(g("C2^3").subgroups().len(), 16);
        assert_eq!(g("C4xC2").subgroups().len(), 8);
        for sg in g("C4xC2").subgroups() {
            assert!(g("C4xC2").validate_subgroup(sg.elements()).is_ok());
        }
    }

    #[test]
    fn group_axioms_exhaustive_small() {
        for spec in ["C4xC2", "C6", "C2^3", "C3xC4", "C8x C2".replace(' ', "").as_str()] {
            let a = g(spec);
            let els: Vec<_> = a.elements().collect();
            let e = a.identity();
            for u in &els {
                assert_eq!(a.mul(u, &e).unwrap(), *u);
                assert_eq!(a.mul(u, &a.inverse(u).unwrap()).unwrap(), e);
                for v in &els {
                    let uv = a.mul(u, v).unwrap();
                    assert_eq!(uv, a.mul(v, u).unwrap());
                    for w in &els {
                        assert_eq!(
                            a.mul(&uv, w).unwrap(),
                            a.mul(u, &a.mul(v, w).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }
}
