//! Unitary irreducible representations of the voltage group: built-ins for
//! cyclic groups and Sym(3), a text file format for everything else,
//! ρ-images of base matrices, and ρ(H) rank computation.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::group_algebra::BaseMatrix;
use crate::group_core::{FiniteGroup, Permutation, Subgroup};

type C64 = Complex<f64>;

pub const HOMOMORPHISM_TOL: f64 = 1e-12;
pub const UNITARITY_TOL: f64 = 1e-12;
pub const ORTHOGONALITY_TOL: f64 = 1e-10;
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// A unitary representation: one d×d complex matrix per group element, in
/// the group's canonical element order.
#[derive(Debug, Clone)]
pub struct Representation {
    name: String,
    dimension: usize,
    matrices: Vec<DMatrix<C64>>,
}

impl Representation {
    pub fn new(name: &str, dimension: usize, matrices: Vec<DMatrix<C64>>) -> Self {
        Self {
            name: name.to_string(),
            dimension,
            matrices,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Matrix of the element with the given canonical index.
    pub fn matrix(&self, index: usize) -> &DMatrix<C64> {
        &self.matrices[index]
    }

    pub fn matrix_of(&self, group: &FiniteGroup, g: &Permutation) -> Result<&DMatrix<C64>> {
        Ok(&self.matrices[group.index_of(g)?])
    }

    /// Character value at the element with the given canonical index.
    pub fn character(&self, index: usize) -> C64 {
        self.matrices[index].diagonal().sum()
    }

    /// Checks the homomorphism property, unitarity, and the identity image.
    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let invalid = |msg: String| Error::IrrepInvalid {
            name: self.name.clone(),
            msg,
        };
        if self.matrices.len() != group.order() {
            return Err(invalid(format!(
                "{} matrices for a group of order {}",
                self.matrices.len(),
                group.order()
            )));
        }
        for m in &self.matrices {
            if m.nrows() != self.dimension || m.ncols() != self.dimension {
                return Err(invalid("matrix dimensions do not match".into()));
            }
        }
        let eye = DMatrix::<C64>::identity(self.dimension, self.dimension);
        let id_index = group.index_of(&group.identity())?;
        if max_abs(&(self.matrices[id_index].clone() - &eye)) > HOMOMORPHISM_TOL {
            return Err(invalid("identity element does not map to the identity matrix".into()));
        }
        for (gi, g) in group.elements().iter().enumerate() {
            let inv_index = group.index_of(&g.inverse())?;
            let dev = max_abs(&(self.matrices[gi].adjoint() - &self.matrices[inv_index]));
            if dev > UNITARITY_TOL {
                return Err(invalid(format!(
                    "unitarity violated at element {g} (deviation {dev:.3e})"
                )));
            }
            for (hi, h) in group.elements().iter().enumerate() {
                let gh_index = group.index_of(&g.compose(h)?)?;
                let dev = max_abs(
                    &(&self.matrices[gi] * &self.matrices[hi] - &self.matrices[gh_index]),
                );
                if dev > HOMOMORPHISM_TOL {
                    return Err(invalid(format!(
                        "homomorphism violated at pair ({g}, {h}) (deviation {dev:.3e})"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// A complete set of unitary irreducible representations of one group.
#[derive(Debug, Clone)]
pub struct IrrepSet {
    group: FiniteGroup,
    irreps: Vec<Representation>,
}

impl IrrepSet {
    /// Wraps and fully validates a set of representations.
    pub fn new(group: FiniteGroup, irreps: Vec<Representation>) -> Result<Self> {
        let set = Self { group, irreps };
        set.validate()?;
        Ok(set)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn irreps(&self) -> &[Representation] {
        &self.irreps
    }

    fn validate(&self) -> Result<()> {
        for rep in &self.irreps {
            rep.validate(&self.group)?;
        }
        let dim_sum: usize = self.irreps.iter().map(|r| r.dimension() * r.dimension()).sum();
        if dim_sum != self.group.order() {
            return Err(Error::IrrepInvalid {
                name: "<set>".into(),
                msg: format!(
                    "completeness violated: sum of squared dimensions is {dim_sum}, group order is {}",
                    self.group.order()
                ),
            });
        }
        let order = self.group.order() as f64;
        for (i, a) in self.irreps.iter().enumerate() {
            for (j, b) in self.irreps.iter().enumerate() {
                let mut inner = C64::new(0.0, 0.0);
                for gi in 0..self.group.order() {
                    inner += a.character(gi) * b.character(gi).conj();
                }
                inner /= order;
                let expected = if i == j { 1.0 } else { 0.0 };
                if (inner - C64::new(expected, 0.0)).norm() > ORTHOGONALITY_TOL {
                    return Err(Error::IrrepInvalid {
                        name: a.name().to_string(),
                        msg: format!(
                            "character orthogonality violated against `{}` (inner product {inner})",
                            b.name()
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// The n one-dimensional representations of a cyclic group of order n:
    /// the canonical generator maps to `exp(2πi·j/n)` under the j-th irrep.
    pub fn cyclic(group: &FiniteGroup) -> Result<Self> {
        let n = group.order();
        let generator = group
            .elements()
            .iter()
            .find(|g| g.order() == n)
            .ok_or(Error::NotCyclic)?;
        // discrete log of every element with respect to the generator
        let mut exponents = vec![usize::MAX; n];
        let mut power = group.identity();
        for m in 0..n {
            exponents[group.index_of(&power)?] = m;
            power = power.compose(generator)?;
        }
        let mut irreps = Vec::with_capacity(n);
        for j in 0..n {
            let matrices = exponents
                .iter()
                .map(|&m| {
                    let angle = 2.0 * PI * (j * m % n) as f64 / n as f64;
                    DMatrix::from_element(1, 1, C64::new(angle.cos(), angle.sin()))
                })
                .collect();
            irreps.push(Representation::new(&format!("rho{j}"), 1, matrices));
        }
        Self::new(group.clone(), irreps)
    }

    /// The three irreducible representations of Sym(3) on three points:
    /// trivial `iota`, parity `pi`, and the two-dimensional `sigma` realized
    /// by the symmetries of an equilateral triangle.
    pub fn sym3(group: &FiniteGroup) -> Result<Self> {
        if group.degree() != 3 || group.order() != 6 {
            return Err(Error::NotSym3);
        }
        let s3 = 3.0_f64.sqrt();
        let two_dim = |g: &Permutation| -> DMatrix<C64> {
            let entries: [[f64; 4]; 6] = [
                [1.0, 0.0, 0.0, 1.0],                         // e
                [-0.5, -s3 / 2.0, -s3 / 2.0, 0.5],            // g = (2 3)
                [-0.5, s3 / 2.0, s3 / 2.0, 0.5],              // h = (1 2)
                [1.0, 0.0, 0.0, -1.0],                        // r = (1 3)
                [-0.5, -s3 / 2.0, s3 / 2.0, -0.5],            // s = (1 2 3)
                [-0.5, s3 / 2.0, -s3 / 2.0, -0.5],            // t = (1 3 2)
            ];
            let which = match g.images() {
                [1, 2, 3] => 0,
                [1, 3, 2] => 1,
                [2, 1, 3] => 2,
                [3, 2, 1] => 3,
                [2, 3, 1] => 4,
                [3, 1, 2] => 5,
                _ => unreachable!("degree-3 permutation"),
            };
            let e = entries[which];
            DMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(e[0], 0.0),
                    C64::new(e[1], 0.0),
                    C64::new(e[2], 0.0),
                    C64::new(e[3], 0.0),
                ],
            )
        };
        let mut iota = Vec::new();
        let mut parity = Vec::new();
        let mut sigma = Vec::new();
        for g in group.elements() {
            iota.push(DMatrix::from_element(1, 1, C64::new(1.0, 0.0)));
            parity.push(DMatrix::from_element(1, 1, C64::new(g.sign() as f64, 0.0)));
            sigma.push(two_dim(g));
        }
        Self::new(
            group.clone(),
            vec![
                Representation::new("iota", 1, iota),
                Representation::new("pi", 1, parity),
                Representation::new("sigma", 2, sigma),
            ],
        )
    }

    /// Built-in irreps: cyclic groups and Sym(3).
    pub fn builtin(group: &FiniteGroup) -> Result<Self> {
        if group.elements().iter().any(|g| g.order() == group.order()) {
            Self::cyclic(group)
        } else if group.degree() == 3 && group.order() == 6 {
            Self::sym3(group)
        } else {
            Err(Error::UnsupportedJ(format!(
                "no built-in irreducible representations for a group of order {} on {} points; supply an irrep file",
                group.order(),
                group.degree()
            )))
        }
    }

    /// Parses the irrep text format and validates the result. The format:
    /// header `irreps <group-order> <count>`; per irrep a line
    /// `rep <name> <dimension>` followed by one d×d block per group element
    /// in canonical order, entries formatted `a+bi`. `#` starts a comment.
    pub fn parse(text: &str, group: &FiniteGroup) -> Result<Self> {
        let mut tokens = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(|l| l.split_whitespace())
            .peekable();
        let parse_err = |msg: String| Error::Parse { line: 0, msg };
        let mut expect = |what: &str| -> Result<&str> {
            tokens
                .next()
                .ok_or_else(|| parse_err(format!("unexpected end of file, expected {what}")))
        };
        if expect("`irreps` header")? != "irreps" {
            return Err(parse_err("file must start with `irreps`".into()));
        }
        let order: usize = expect("group order")?
            .parse()
            .map_err(|_| parse_err("bad group order".into()))?;
        if order != group.order() {
            return Err(parse_err(format!(
                "file is for a group of order {order}, got order {}",
                group.order()
            )));
        }
        let count: usize = expect("representation count")?
            .parse()
            .map_err(|_| parse_err("bad representation count".into()))?;
        let mut irreps = Vec::with_capacity(count);
        for _ in 0..count {
            if expect("`rep`")? != "rep" {
                return Err(parse_err("expected `rep`".into()));
            }
            let name = expect("representation name")?.to_string();
            let dim: usize = expect("dimension")?
                .parse()
                .map_err(|_| parse_err(format!("bad dimension for `{name}`")))?;
            let mut matrices = Vec::with_capacity(order);
            for _ in 0..order {
                let mut m = DMatrix::<C64>::zeros(dim, dim);
                for r in 0..dim {
                    for c in 0..dim {
                        let tok = expect("matrix entry")?;
                        m[(r, c)] = parse_complex(tok)
                            .map_err(|e| parse_err(format!("in `{name}`: {e}")))?;
                    }
                }
                matrices.push(m);
            }
            irreps.push(Representation::new(&name, dim, matrices));
        }
        if tokens.peek().is_some() {
            return Err(parse_err("trailing tokens after the last representation".into()));
        }
        Self::new(group.clone(), irreps)
    }

    /// Serializes to the irrep text format (inverse of [`IrrepSet::parse`]).
    pub fn to_text(&self) -> String {
        let mut out = format!("irreps {} {}\n", self.group.order(), self.irreps.len());
        for rep in &self.irreps {
            out.push_str(&format!("rep {} {}\n", rep.name(), rep.dimension()));
            for gi in 0..self.group.order() {
                let m = rep.matrix(gi);
                for r in 0..rep.dimension() {
                    let row: Vec<String> =
                        (0..rep.dimension()).map(|c| format_complex(m[(r, c)])).collect();
                    out.push_str(&row.join(" "));
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn format_complex(c: C64) -> String {
    format!("{}{}{}i", c.re, if c.im < 0.0 { "-" } else { "+" }, c.im.abs())
}

fn parse_complex(token: &str) -> Result<C64> {
    let bad = || Error::InvalidPermutation(format!("bad complex number `{token}`"));
    let parse_f64 = |s: &str| -> Result<f64> {
        s.parse::<f64>().map_err(|_| Error::Internal(format!("bad real `{s}` in `{token}`")))
    };
    if let Some(body) = token.strip_suffix('i') {
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        match split {
            Some(idx) => {
                let re = parse_f64(&body[..idx])?;
                let im = parse_f64(&body[idx..])?;
                Ok(C64::new(re, im))
            }
            None => {
                if body.is_empty() {
                    return Err(bad());
                }
                Ok(C64::new(0.0, parse_f64(body)?))
            }
        }
    } else {
        Ok(C64::new(parse_f64(token)?, 0.0))
    }
}

/// The ρ-image of a base matrix: the d·k × d·k block matrix with block
/// (u, v) equal to the sum of `coeff · ρ(g)` over the entry's support.
pub fn rho_image(rep: &Representation, b: &BaseMatrix) -> Result<DMatrix<C64>> {
    let d = rep.dimension();
    let k = b.dimension();
    let group = b.group();
    let mut out = DMatrix::<C64>::zeros(d * k, d * k);
    for u in 0..k {
        for v in 0..k {
            let mut block = DMatrix::<C64>::zeros(d, d);
            for (g, coeff) in b.entry(u, v).terms() {
                block += rep.matrix_of(group, g)? * *coeff;
            }
            out.view_mut((u * d, v * d), (d, d)).copy_from(&block);
        }
    }
    Ok(out)
}

/// `ρ(H) = Σ_{h∈H} ρ(h)` and its numerical rank: singular values above
/// `tol · max(1, σ_max)` count.
pub fn subgroup_sum(
    rep: &Representation,
    group: &FiniteGroup,
    subgroup: &Subgroup,
    rank_tol: f64,
) -> Result<(DMatrix<C64>, usize)> {
    let d = rep.dimension();
    let mut sum = DMatrix::<C64>::zeros(d, d);
    for h in subgroup.elements() {
        sum += rep.matrix_of(group, h)?;
    }
    let rank = numerical_rank(&sum, rank_tol);
    Ok((sum, rank))
}

/// Numerical rank by singular values.
pub fn numerical_rank(m: &DMatrix<C64>, tol: f64) -> usize {
    let svd = m.clone().svd(false, false);
    let max_sv = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = tol * max_sv.max(1.0);
    svd.singular_values.iter().filter(|&&s| s > cutoff).count()
}
