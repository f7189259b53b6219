//! Monomials and monomial ideals in k[x_1, ..., x_n].

use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::setfamily::{self, Mask};
use crate::simplicial::SimplicialComplex;

/// A monomial as a dense exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable x_{i+1} (0-based index).
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_mask(n: usize, mask: Mask) -> Self {
        Monomial {
            exps: (0..n).map(|v| ((mask >> v) & 1) as u32).collect(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Bit mask of the variables that occur.
    pub fn support(&self) -> Mask {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (v, _)| m | (1 << v))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn radical(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e.min(1)).collect(),
        }
    }

    /// Place this monomial into `n_total` variables starting at `offset`.
    pub fn embed(&self, n_total: usize, offset: usize) -> Monomial {
        assert!(offset + self.exps.len() <= n_total);
        let mut exps = vec![0; n_total];
        exps[offset..offset + self.exps.len()].copy_from_slice(&self.exps);
        Monomial { exps }
    }

    /// Parse `x1*x2^2`, `x_1x_2`, `x3`, or `1` in `n` variables.
    pub fn parse(s: &str, n: usize) -> Result<Monomial> {
        let s = s.trim();
        let mut exps = vec![0u32; n];
        if s == "1" {
            return Ok(Monomial { exps });
        }
        let bad = || Error::Parse(format!("bad monomial `{s}`"));
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if chars.is_empty() {
            return Err(bad());
        }
        let digits = |pos: &mut usize| -> Option<u64> {
            let braced = chars.get(*pos) == Some(&'{');
            *pos += braced as usize;
            let start = *pos;
            while chars.get(*pos).is_some_and(char::is_ascii_digit) {
                *pos += 1;
            }
            let v = chars[start..*pos].iter().collect::<String>().parse().ok();
            if braced {
                (chars.get(*pos) == Some(&'}')).then(|| *pos += 1)?;
            }
            v
        };
        let mut pos = 0;
        while pos < chars.len() {
            if chars[pos] != 'x' {
                return Err(bad());
            }
            pos += 1;
            if chars.get(pos) == Some(&'_') {
                pos += 1;
            }
            let idx = digits(&mut pos).ok_or_else(bad)? as usize;
            let exp = if chars.get(pos) == Some(&'^') {
                pos += 1;
                u32::try_from(digits(&mut pos).ok_or_else(bad)?).map_err(|_| bad())?
            } else {
                1
            };
            if idx == 0 || idx > n {
                return Err(Error::Parse(format!("variable x{idx} outside x1..x{n}")));
            }
            exps[idx - 1] += exp;
        }
        Ok(Monomial { exps })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", v + 1)?;
            } else {
                write!(f, "x{}^{}", v + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal stored by its minimal generators, sorted by degree and
/// then lexicographically (x1 > x2 > ...). No generators is the zero ideal;
/// the single generator 1 is the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

fn minimal_generators(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    /// The ideal generated by `gens` (any generating set; it is minimalized).
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.n_vars() != n) {
            return Err(Error::InvalidInput(format!(
                "generator {g} has {} exponents, expected {n}",
                g.n_vars()
            )));
        }
        Ok(MonomialIdeal {
            n,
            gens: minimal_generators(gens),
        })
    }

    pub fn from_exponents(n: usize, gens: &[Vec<u32>]) -> Result<Self> {
        Self::new(n, gens.iter().map(|e| Monomial::new(e.clone())).collect())
    }

    /// Squarefree ideal from vertex lists, e.g. `[[1,2],[2,3]]` for (x1x2, x2x3).
    pub fn from_supports(n: usize, supports: &[Vec<usize>]) -> Result<Self> {
        let mut gens = Vec::with_capacity(supports.len());
        for s in supports {
            let mut exps = vec![0u32; n];
            for &v in s {
                if v == 0 || v > n {
                    return Err(Error::InvalidInput(format!("variable {v} outside 1..{n}")));
                }
                exps[v - 1] = 1;
            }
            gens.push(Monomial::new(exps));
        }
        Self::new(n, gens)
    }

    pub fn from_masks(n: usize, masks: &[Mask]) -> Self {
        MonomialIdeal {
            n,
            gens: minimal_generators(masks.iter().map(|&m| Monomial::from_mask(n, m)).collect()),
        }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    /// The ideal (x_{i1}, ..., x_{ik}) for 1-based indices.
    pub fn prime(n: usize, vars: &[usize]) -> Result<Self> {
        let supports: Vec<Vec<usize>> = vars.iter().map(|&v| vec![v]).collect();
        Self::from_supports(n, &supports)
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Errors unless the ideal is nonzero and proper.
    pub fn require_proper(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else if self.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn require_squarefree(&self) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_squarefree()) {
            Some(g) => Err(Error::NotSquarefree(g.to_string())),
            None => Ok(()),
        }
    }

    /// Generator supports as bit masks (meaningful for squarefree ideals).
    pub fn masks(&self) -> Vec<Mask> {
        self.gens.iter().map(Monomial::support).collect()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).max()
    }

    pub fn has_linear_generator(&self) -> bool {
        self.gens.iter().any(|g| g.degree() == 1)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Stanley-Reisner ideal: generated by the minimal nonfaces of Δ.
    pub fn from_complex(delta: &SimplicialComplex) -> Result<Self> {
        if delta.is_full_simplex() {
            return Err(Error::ZeroIdeal);
        }
        Ok(Self::from_masks(delta.n(), &delta.minimal_nonfaces()))
    }

    /// The complex Δ with I = I_Δ.
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        self.require_squarefree()?;
        let facets =
            setfamily::maximal_avoiding(self.n, &self.masks(), Budget::default().faces);
        SimplicialComplex::new(self.n, facets)
    }

    /// The Alexander dual ideal I_{Δ∨}: generated by complements of facets of Δ.
    pub fn dual_ideal(&self) -> Result<Self> {
        let delta = self.to_complex()?;
        let all = setfamily::full_mask(self.n);
        let comps: Vec<Mask> = delta.facets().iter().map(|&f| all & !f).collect();
        Ok(Self::from_masks(self.n, &comps))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(MonomialIdeal {
            n: self.n,
            gens: minimal_generators(gens),
        })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(MonomialIdeal {
            n: self.n,
            gens: minimal_generators(gens),
        })
    }

    /// I + J in m + n variables, with J's variables shifted past I's.
    pub fn sum_disjoint(&self, other: &Self) -> Self {
        let total = self.n + other.n;
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(total, 0))
            .chain(other.gens.iter().map(|g| g.embed(total, self.n)))
            .collect();
        MonomialIdeal {
            n: total,
            gens: minimal_generators(gens),
        }
    }

    /// The same generators in `n_total` variables, starting at `offset`.
    pub fn embed(&self, n_total: usize, offset: usize) -> Self {
        MonomialIdeal {
            n: n_total,
            gens: minimal_generators(self.gens.iter().map(|g| g.embed(n_total, offset)).collect()),
        }
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::InvalidInput(format!(
                "ideals live in {} and {} variables",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// The ideal generated by the degree-`r` monomials of I (zero if none).
    pub fn degree_component(&self, r: usize, budget: &Budget) -> Result<Self> {
        if r > budget.degree {
            return Err(Error::budget("degree component", r, budget.degree));
        }
        let mut out: Vec<Monomial> = Vec::new();
        for g in &self.gens {
            let dg = g.degree() as usize;
            if dg > r {
                continue;
            }
            let mut exps = vec![0u32; self.n];
            let mut overflow = false;
            for_each_composition(&mut exps, 0, (r - dg) as u32, &mut |e| {
                if out.len() >= budget.faces {
                    overflow = true;
                    return;
                }
                out.push(g.mul(&Monomial::new(e.to_vec())));
            });
            if overflow {
                return Err(Error::budget("degree component size", out.len(), budget.faces));
            }
        }
        Ok(MonomialIdeal {
            n: self.n,
            gens: minimal_generators(out),
        })
    }

    /// The ideal generated by the squarefree monomials of degree `r` in a
    /// squarefree ideal.
    pub fn squarefree_component(&self, r: usize, budget: &Budget) -> Result<Self> {
        self.require_squarefree()?;
        let mut out: Vec<Mask> = Vec::new();
        for g in self.masks() {
            let dg = g.count_ones() as usize;
            if dg > r {
                continue;
            }
            let free = crate::setfamily::full_mask(self.n) & !g;
            for extra in crate::setfamily::submasks_of_size(free, r - dg) {
                if out.len() >= budget.faces {
                    return Err(Error::budget("degree component size", out.len() + 1, budget.faces));
                }
                out.push(g | extra);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(Self::from_masks(self.n, &out))
    }

    /// Height of a squarefree ideal: the smallest degree of a generator of the
    /// Alexander dual (a minimum vertex cover of the generator supports).
    pub fn height(&self) -> Result<usize> {
        self.require_squarefree()?;
        self.require_proper()?;
        let dual = self.dual_ideal()?;
        Ok(dual.min_degree().unwrap_or(0) as usize)
    }

    /// Generator-wise radical, minimalized.
    pub fn radical(&self) -> Self {
        MonomialIdeal {
            n: self.n,
            gens: minimal_generators(self.gens.iter().map(Monomial::radical).collect()),
        }
    }
}

/// Call `f` on every exponent vector extending `exps[..from]` with total `left`.
fn for_each_composition(exps: &mut [u32], from: usize, left: u32, f: &mut dyn FnMut(&[u32])) {
    if from + 1 >= exps.len() {
        if exps.is_empty() {
            if left == 0 {
                f(exps);
            }
            return;
        }
        let last = exps.len() - 1;
        exps[last] = left;
        f(exps);
        exps[last] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[from] = e;
        for_each_composition(exps, from + 1, left - e, f);
    }
    exps[from] = 0;
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, s: &[&[usize]]) -> MonomialIdeal {
        let v: Vec<Vec<usize>> = s.iter().map(|x| x.to_vec()).collect();
        MonomialIdeal::from_supports(n, &v).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let m = Monomial::parse("x1*x2^2", 3).unwrap();
        assert_eq!(m.exps(), &[1, 2, 0]);
        assert_eq!(m.to_string(), "x1*x2^2");
        assert_eq!(Monomial::parse("1", 2).unwrap(), Monomial::one(2));
        assert!(Monomial::parse("x4", 3).is_err());
        assert!(Monomial::parse("y1", 3).is_err());
        assert_eq!(Monomial::parse("x_1x_3^2", 3).unwrap().exps(), &[1, 0, 2]);
        assert_eq!(Monomial::parse("x_{2} * x1", 3).unwrap().exps(), &[1, 1, 0]);
        assert!(Monomial::parse("x1^", 3).is_err());
        assert!(Monomial::parse("", 3).is_err());
    }

    #[test]
    fn minimal_generators_are_canonical() {
        let i = MonomialIdeal::from_exponents(2, &[vec![1, 1], vec![1, 0], vec![2, 0]]).unwrap();
        assert_eq!(i.gens().len(), 1);
        let j = ideal(3, &[&[2, 3], &[1, 2], &[1, 3]]);
        assert_eq!(j.to_string(), "(x1*x2, x1*x3, x2*x3)");
    }

    #[test]
    fn complex_round_trip() {
        let three = SimplicialComplex::from_vertex_lists(3, &[vec![1], vec![2], vec![3]]).unwrap().0;
        let i = MonomialIdeal::from_complex(&three).unwrap();
        assert_eq!(i, ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]));
        assert_eq!(i.to_complex().unwrap(), three);
        assert_eq!(i.dual_ideal().unwrap(), i);
        let bd = SimplicialComplex::boundary(4);
        assert_eq!(MonomialIdeal::from_complex(&bd).unwrap(), ideal(4, &[&[1, 2, 3, 4]]));
        assert!(MonomialIdeal::from_complex(&SimplicialComplex::simplex(3)).is_err());
    }

    #[test]
    fn dual_and_height() {
        let i = ideal(2, &[&[1, 2]]);
        assert_eq!(i.dual_ideal().unwrap(), ideal(2, &[&[1], &[2]]));
        assert_eq!(i.height().unwrap(), 1);
        assert_eq!(ideal(2, &[&[1], &[2]]).height().unwrap(), 2);
        let sq = MonomialIdeal::from_exponents(1, &[vec![2]]).unwrap();
        assert!(matches!(sq.dual_ideal(), Err(Error::NotSquarefree(_))));
    }

    #[test]
    fn intersections_and_sums() {
        let x1 = ideal(2, &[&[1]]);
        let x2 = ideal(2, &[&[2]]);
        assert_eq!(x1.intersect(&x2).unwrap(), ideal(2, &[&[1, 2]]));
        assert_eq!(x1.intersect(&x1).unwrap(), x1);
        let s = ideal(1, &[&[1]]).sum_disjoint(&ideal(1, &[&[1]]));
        assert_eq!(s, ideal(2, &[&[1], &[2]]));
    }

    #[test]
    fn degree_components() {
        let b = Budget::default();
        let x1 = ideal(2, &[&[1]]);
        let c = x1.degree_component(2, &b).unwrap();
        assert_eq!(c, MonomialIdeal::from_exponents(2, &[vec![2, 0], vec![1, 1]]).unwrap());
        let t = ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(t.degree_component(2, &b).unwrap(), t);
        let m = ideal(3, &[&[1], &[2, 3]]);
        assert_eq!(m.degree_component(1, &b).unwrap(), ideal(3, &[&[1]]));
        assert!(m.degree_component(0, &b).unwrap().is_zero());
        assert!(m.degree_component(13, &b).unwrap_err().is_budget());
    }
}
