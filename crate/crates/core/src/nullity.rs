//! Exact rational matrices, nullity, and involution witnesses for maximum
//! nullity of `G □ P_2` iterates.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forcing::propagation_time;
use crate::graph::{cartesian_product, encode_graph6, Family, Graph};
use crate::search::{analyze, Budget};
use crate::vertex_set::VertexSet;

/// A square matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl RationalMatrix {
    pub fn zero(dim: usize) -> Self {
        RationalMatrix {
            dim,
            entries: vec![BigRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// `J`: every entry one.
    pub fn ones(dim: usize) -> Self {
        RationalMatrix {
            dim,
            entries: vec![BigRational::one(); dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        Ok(RationalMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
    }

    /// Parses entries written as `p/q` or `p`.
    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let parse = |s: &String| -> Result<BigRational> {
            s.trim()
                .parse::<BigRational>()
                .map_err(|_| Error::InvalidArgument(format!("bad rational entry {s:?}")))
        };
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(parse).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.entries[i * self.dim + j] = x;
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::InvalidArgument(format!("dimension mismatch {} vs {}", self.dim, other.dim)));
        }
        Ok(RationalMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::InvalidArgument(format!("dimension mismatch {} vs {}", self.dim, other.dim)));
        }
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("square matrix")
    }

    /// `[[a, b], [c, d]]` from four blocks of equal dimension.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let n = a.dim;
        if [b.dim, c.dim, d.dim].iter().any(|&x| x != n) {
            return Err(Error::InvalidArgument("block dimensions differ".into()));
        }
        let mut out = Self::zero(2 * n);
        for (bi, bj, m) in [(0, 0, a), (0, 1, b), (1, 0, c), (1, 1, d)] {
            for i in 0..n {
                for j in 0..n {
                    out.set(bi * n + i, bj * n + j, m.get(i, j).clone());
                }
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rank by fraction-free elimination on the integer matrix obtained by
    /// clearing each row's denominators.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let row = &self.entries[i * n..(i + 1) * n];
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect()
            })
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..n {
                for j in col + 1..n {
                    let v = (&m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.dim - self.rank()
    }

    /// `A` is symmetric and its off-diagonal nonzero pattern is exactly the
    /// edge set of `g`.
    pub fn conforms(&self, g: &Graph) -> Result<bool> {
        if self.dim != g.order() {
            return Err(Error::InvalidArgument(format!(
                "matrix of dimension {} against graph of order {}",
                self.dim,
                g.order()
            )));
        }
        let pattern = (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || !self.get(i, j).is_zero() == g.has_edge(i, j)));
        Ok(pattern && self.is_symmetric())
    }

    /// Entries as `p/q` strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| fmt_entry(self.get(i, j))).collect())
            .collect()
    }
}

fn fmt_entry(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Graphs with a known `L` in `S(G)` satisfying `L^2 = I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvolutionFamily {
    /// `K_n`, `n >= 2`, with `L = I - (2/n) J`.
    Complete(usize),
    /// `P_2` with `L = [[0, 1], [1, 0]]`.
    P2,
}

impl InvolutionFamily {
    pub fn parse(name: &str, params: &[usize]) -> Result<Self> {
        match (name.to_ascii_lowercase().as_str(), params) {
            ("kn" | "k" | "complete", [n]) if *n >= 2 => Ok(InvolutionFamily::Complete(*n)),
            ("p2", []) | ("path" | "p", [2]) => Ok(InvolutionFamily::P2),
            _ => Err(Error::InvalidArgument(format!(
                "no involution witness for family {name} {params:?}; supported: Kn <n >= 2>, P2"
            ))),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        match *self {
            InvolutionFamily::Complete(n) => Family::Complete(n).build(),
            InvolutionFamily::P2 => Family::Path(2).build(),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            InvolutionFamily::Complete(n) => format!("K{n}"),
            InvolutionFamily::P2 => "P2".into(),
        }
    }
}

/// `L` with `L^2 = I` conforming to the family's graph; both are checked.
pub fn involution_witness(family: InvolutionFamily) -> Result<(RationalMatrix, Graph)> {
    let g = family.graph()?;
    let l = match family {
        InvolutionFamily::Complete(n) => {
            let j = RationalMatrix::ones(n).scale(&rat(2, n as i64));
            RationalMatrix::identity(n).sub(&j)?
        }
        InvolutionFamily::P2 => RationalMatrix::from_i64(&[vec![0, 1], vec![1, 0]])?,
    };
    check_involution(&l, &g)?;
    Ok((l, g))
}

fn check_involution(l: &RationalMatrix, g: &Graph) -> Result<()> {
    if !l.conforms(g)? {
        return Err(Error::Precondition("L does not conform to G".into()));
    }
    if l.square() != RationalMatrix::identity(l.dim()) {
        return Err(Error::Precondition("L^2 != I".into()));
    }
    Ok(())
}

/// One doubling step from `L` in `S(G)` with `L^2 = I`.
#[derive(Clone, Debug, Serialize)]
pub struct HatStep {
    /// `[[L, I], [I, L]]`, of nullity `|G|`.
    pub h: RationalMatrix,
    /// `[[L, I], [I, -L]]`, with square `2I`; scaled by `1/sqrt 2` it is an
    /// involution in `S(G □ P_2)`.
    pub m_unscaled: RationalMatrix,
    /// `[[3/5 L, 4/5 I], [4/5 I, -3/5 L]]`: a rational involution in
    /// `S(G □ P_2)`, used to iterate the step without irrational entries.
    pub l_next: RationalMatrix,
    #[serde(skip)]
    pub g_next: Graph,
    pub nullity_h: usize,
}

pub fn hat_step(l: &RationalMatrix, g: &Graph) -> Result<HatStep> {
    check_involution(l, g)?;
    let n = g.order();
    let i = RationalMatrix::identity(n);
    let neg_l = l.scale(&rat(-1, 1));
    let h = RationalMatrix::blocks(l, &i, &i, l)?;
    let m_unscaled = RationalMatrix::blocks(l, &i, &i, &neg_l)?;
    let (c, s) = (rat(3, 5), rat(4, 5));
    let l_next = RationalMatrix::blocks(&l.scale(&c), &i.scale(&s), &i.scale(&s), &l.scale(&-c.clone()))?;
    let g_next = cartesian_product(g, &Family::Path(2).build()?)?;

    let fail = |what: &str| Err(Error::Violation(format!("doubling step: {what}")));
    if !h.conforms(&g_next)? || !m_unscaled.conforms(&g_next)? || !l_next.conforms(&g_next)? {
        return fail("output does not conform to G □ P2");
    }
    if m_unscaled.square() != RationalMatrix::identity(2 * n).scale(&rat(2, 1)) {
        return fail("M^2 != 2I");
    }
    if l_next.square() != RationalMatrix::identity(2 * n) {
        return fail("rational involution does not square to I");
    }
    let nullity_h = h.nullity();
    if nullity_h != n {
        return fail("null(H) != n");
    }
    Ok(HatStep {
        h,
        m_unscaled,
        l_next,
        g_next,
        nullity_h,
    })
}

/// Maximum-nullity certificate for `G (□ P_2)^s`.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub family: String,
    pub base_order: usize,
    pub steps: usize,
    pub order: usize,
    pub graph6: String,
    /// `null(H)` of the last step: a lower bound on `M`.
    pub m_lower: usize,
    /// `|G| 2^(s-1)`.
    pub expected: usize,
    /// One copy of the last doubling is a zero forcing set of size `m_lower`
    /// with propagation time one, so `Z = m_lower` and `pt = 1`.
    pub copy_forces_in_one_round: bool,
    /// Exhaustive `Z` and `pt` when within budget.
    pub z_exact: Option<usize>,
    pub pt_exact: Option<usize>,
    pub m_squared_is_2i: bool,
    pub h: RationalMatrix,
    pub involution: RationalMatrix,
}

impl Certificate {
    /// Every computed quantity matches `|G| 2^(s-1)` and `pt = 1`.
    pub fn holds(&self) -> bool {
        self.m_lower == self.expected
            && self.copy_forces_in_one_round
            && self.m_squared_is_2i
            && self.z_exact.is_none_or(|z| z == self.expected && z >= self.m_lower)
            && self.pt_exact.is_none_or(|p| p == 1)
    }
}

pub fn certify_family(family: InvolutionFamily, steps: usize, budget: &Budget) -> Result<Certificate> {
    if steps == 0 {
        return Err(Error::InvalidArgument("at least one doubling step is required".into()));
    }
    let (mut l, mut g) = involution_witness(family)?;
    let base_order = g.order();
    let mut last = None;
    for _ in 0..steps {
        let step = hat_step(&l, &g)?;
        l = step.l_next.clone();
        g = step.g_next.clone();
        last = Some(step);
    }
    let last = last.unwrap();
    let half = g.order() / 2;
    let copy: VertexSet = (0..half).collect();
    let copy_forces_in_one_round = copy.len() == last.nullity_h && propagation_time(&g, copy) == Some(1);
    let (z_exact, pt_exact) = match analyze(&g, budget) {
        Ok(r) => (Some(r.z), Some(r.pt)),
        Err(e) if e.is_budget() => (None, None),
        Err(e) => return Err(e),
    };
    let cert = Certificate {
        family: family.name(),
        base_order,
        steps,
        order: g.order(),
        graph6: encode_graph6(&g)?,
        m_lower: last.nullity_h,
        expected: base_order << (steps - 1),
        copy_forces_in_one_round,
        z_exact,
        pt_exact,
        m_squared_is_2i: true,
        h: last.h,
        involution: l,
    };
    if !cert.holds() {
        return Err(Error::Violation(format!(
            "certificate for {} with {steps} steps fails: M>={} Z={:?} pt={:?}",
            cert.family, cert.m_lower, cert.z_exact, cert.pt_exact
        )));
    }
    Ok(cert)
}
