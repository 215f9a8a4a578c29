//! Hermitian eigensolving, spectrum assembly from ρ-images, eigenvector
//! lifting, the direct-eigensolve oracle, and multiset comparison.

use nalgebra::{Complex, DMatrix, DVector};
use rayon::prelude::*;

use crate::coeffs::Coeffs;
use crate::error::{Error, Result};
use crate::group_algebra::{base_components, universal_base_matrix, BaseComponents, BaseMatrix};
use crate::group_core::{CosetTable, Permutation};
use crate::representations::{numerical_rank, rho_image, subgroup_sum, IrrepSet, Representation, DEFAULT_RANK_TOL};
use crate::voltage_graph::{build_lift, BaseGraph, VoltageAssignment};

type C64 = Complex<f64>;

pub const DEFAULT_SPECTRUM_TOL: f64 = 1e-8;
pub const DEFAULT_LIFT_RESIDUAL_TOL: f64 = 1e-8;
const EIGEN_RESIDUAL_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-10;

/// Tunable tolerances and the optional user-designated element for the
/// all-ones base matrix.
#[derive(Debug, Clone)]
pub struct EngineOptions {
    pub rank_tol: f64,
    pub lift_residual_tol: f64,
    pub j_element: Option<Permutation>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self {
            rank_tol: DEFAULT_RANK_TOL,
            lift_residual_tol: DEFAULT_LIFT_RESIDUAL_TOL,
            j_element: None,
        }
    }
}

/// Per-irrep contribution to an assembled spectrum.
#[derive(Debug, Clone)]
pub struct IrrepContribution {
    pub name: String,
    pub dimension: usize,
    pub rank: usize,
    /// Eigenvalues of the ρ-image, ascending, before multiplication by rank.
    pub eigenvalues: Vec<f64>,
}

/// Where an assembled spectrum came from.
#[derive(Debug, Clone)]
pub enum Provenance {
    Direct,
    PerIrrep(Vec<IrrepContribution>),
}

/// A multiset of real eigenvalues stored as a sorted list.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<f64>,
    provenance: Provenance,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Groups numerically equal eigenvalues: (representative, multiplicity)
    /// pairs, where consecutive values within `tol` share a group.
    pub fn grouped(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((rep, count)) if (v - *rep).abs() <= tol => *count += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix: eigenvalues ascending with the
/// eigenvector columns permuted to match. The input is symmetrized before
/// solving; inputs farther than `1e-10` from Hermitian are rejected.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> Result<(Vec<f64>, DMatrix<C64>)> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch("eigensolver needs a square matrix".into()));
    }
    let deviation = max_abs(&(m.adjoint() - m));
    if deviation > HERMITIAN_TOL * max_abs(m).max(1.0) {
        return Err(Error::NonHermitian { deviation });
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let n = sym.nrows();
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let (raw_values, raw_vectors) = jacobi_hermitian(&sym)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw_values[a].total_cmp(&raw_values[b]));
    let values: Vec<f64> = order.iter().map(|&i| raw_values[i]).collect();
    let mut vectors = DMatrix::<C64>::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &raw_vectors.column(i));
    }
    // residual sanity on the solver itself
    let scale = sym.norm().max(1.0);
    for (col, &value) in values.iter().enumerate() {
        let v = vectors.column(col);
        let residual = (&sym * v - v.scale(value)).norm();
        if residual > EIGEN_RESIDUAL_TOL * scale {
            return Err(Error::Internal(format!(
                "eigensolver residual {residual:.3e} exceeds tolerance at eigenvalue {value}"
            )));
        }
    }
    Ok((values, vectors))
}

/// Cyclic Jacobi eigensolver for Hermitian matrices: each rotation zeroes one
/// off-diagonal pair with a unitary 2×2 transform; sweeps repeat until the
/// off-diagonal mass vanishes. Unsorted eigenvalues with matching eigenvector
/// columns.
fn jacobi_hermitian(a: &DMatrix<C64>) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let n = a.nrows();
    let mut a = a.clone();
    let mut v = DMatrix::<C64>::identity(n, n);
    let scale = a.norm().max(f64::MIN_POSITIVE);
    let target = 1e-15 * scale;
    let mut converged = false;
    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| 2.0 * a[(p, q)].norm_sqr())
            .sum();
        if off.sqrt() <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= target / (n as f64) {
                    continue;
                }
                // phase-align the pivot, then a real Jacobi rotation
                let phase = apq / C64::new(r, 0.0);
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let u00 = phase.scale(c);
                let u01 = phase.scale(s);
                let u10 = C64::new(-s, 0.0);
                let u11 = C64::new(c, 0.0);
                // A ← Uᴴ·A·U and V ← V·U on columns/rows p, q
                for i in 0..n {
                    let (aip, aiq) = (a[(i, p)], a[(i, q)]);
                    a[(i, p)] = aip * u00 + aiq * u10;
                    a[(i, q)] = aip * u01 + aiq * u11;
                    let (vip, viq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = vip * u00 + viq * u10;
                    v[(i, q)] = vip * u01 + viq * u11;
                }
                for j in 0..n {
                    let (apj, aqj) = (a[(p, j)], a[(q, j)]);
                    a[(p, j)] = u00.conj() * apj + u10.conj() * aqj;
                    a[(q, j)] = u01.conj() * apj + u11.conj() * aqj;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    if !converged {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| 2.0 * a[(p, q)].norm_sqr())
            .sum();
        if off.sqrt() > 1e-12 * scale {
            return Err(Error::Internal(format!(
                "Jacobi eigensolver failed to converge: off-diagonal norm {:.3e}",
                off.sqrt()
            )));
        }
    }
    let values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    Ok((values, v))
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|x| C64::new(x, 0.0))
}

struct Prepared {
    table: CosetTable,
    components: BaseComponents,
    base_matrix: BaseMatrix,
}

fn prepare(
    base: &BaseGraph,
    assignment: &VoltageAssignment,
    coeffs: Coeffs,
    options: &EngineOptions,
) -> Result<Prepared> {
    assignment.validate(base).into_result()?;
    let table = CosetTable::new(&assignment.group, &assignment.subgroup)?;
    let components = base_components(base, assignment, &table, options.j_element.as_ref())?;
    let base_matrix = universal_base_matrix(&components, coeffs)?;
    Ok(Prepared {
        table,
        components,
        base_matrix,
    })
}

/// Checks `Σ_ρ rank(ρ(H))·d_ρ = n` and returns the per-irrep ranks.
fn counting_identity(
    irreps: &IrrepSet,
    assignment: &VoltageAssignment,
    n: usize,
    rank_tol: f64,
) -> Result<Vec<usize>> {
    let ranks: Vec<usize> = irreps
        .irreps()
        .iter()
        .map(|rep| {
            subgroup_sum(rep, irreps.group(), &assignment.subgroup, rank_tol)
                .map(|(_, rank)| rank)
        })
        .collect::<Result<_>>()?;
    let total: usize = irreps
        .irreps()
        .iter()
        .zip(&ranks)
        .map(|(rep, &rank)| rank * rep.dimension())
        .sum();
    if total != n {
        return Err(Error::CountMismatch {
            expected: n,
            actual: total,
        });
    }
    Ok(ranks)
}

/// Spectrum of the lift's universal adjacency matrix assembled from the
/// ρ-images: each irrep contributes its ρ-image eigenvalues with
/// multiplicity `rank(ρ(H))`.
pub fn spectrum_via_reps(
    base: &BaseGraph,
    assignment: &VoltageAssignment,
    coeffs: Coeffs,
    irreps: &IrrepSet,
    options: &EngineOptions,
) -> Result<Spectrum> {
    if irreps.group() != &assignment.group {
        return Err(Error::GroupMismatch);
    }
    let prepared = prepare(base, assignment, coeffs, options)?;
    let n = prepared.table.index();
    let k = base.order();
    let ranks = counting_identity(irreps, assignment, n, options.rank_tol)?;

    let contributions: Vec<IrrepContribution> = irreps
        .irreps()
        .par_iter()
        .zip(&ranks)
        .map(|(rep, &rank)| -> Result<IrrepContribution> {
            let eigenvalues = if rank == 0 {
                Vec::new()
            } else {
                let image = rho_image(rep, &prepared.base_matrix)?;
                hermitian_eigen(&image)?.0
            };
            Ok(IrrepContribution {
                name: rep.name().to_string(),
                dimension: rep.dimension(),
                rank,
                eigenvalues,
            })
        })
        .collect::<Result<_>>()?;

    let mut values = Vec::with_capacity(k * n);
    for contribution in &contributions {
        for &value in &contribution.eigenvalues {
            for _ in 0..contribution.rank {
                values.push(value);
            }
        }
    }
    if values.len() != k * n {
        return Err(Error::CountMismatch {
            expected: k * n,
            actual: values.len(),
        });
    }
    values.sort_by(f64::total_cmp);
    Ok(Spectrum {
        values,
        provenance: Provenance::PerIrrep(contributions),
    })
}

/// Independent oracle: build the lift explicitly, assemble its universal
/// adjacency matrix, and eigensolve it directly.
pub fn spectrum_direct(
    base: &BaseGraph,
    assignment: &VoltageAssignment,
    coeffs: Coeffs,
) -> Result<Spectrum> {
    let lift = build_lift(base, assignment)?;
    let matrix = complexify(&lift.universal_matrix(coeffs));
    let (values, _) = hermitian_eigen(&matrix)?;
    Ok(Spectrum {
        values,
        provenance: Provenance::Direct,
    })
}

/// One lifted eigenvector of the lift's universal adjacency matrix, indexed
/// by lift vertices in base-vertex-major order.
#[derive(Debug, Clone)]
pub struct LiftedEigenvector {
    pub eigenvalue: f64,
    pub vector: DVector<C64>,
    pub irrep: String,
    pub eigenvector_index: usize,
    pub fixed_index: usize,
    pub residual: f64,
}

/// Lifts every ρ-image eigenvector to eigenvectors of the lift matrix:
/// `x_{(u,i)} = yᵀ·ρ(gᵢ)·w_u` with `y` ranging over an orthonormal basis of
/// the left-fixed space of ρ restricted to H. Every emitted vector is
/// normalized and residual-checked, and the full k·n collection must have
/// full numerical rank.
pub fn lift_eigenvectors(
    base: &BaseGraph,
    assignment: &VoltageAssignment,
    coeffs: Coeffs,
    irreps: &IrrepSet,
    options: &EngineOptions,
) -> Result<Vec<LiftedEigenvector>> {
    if irreps.group() != &assignment.group {
        return Err(Error::GroupMismatch);
    }
    let prepared = prepare(base, assignment, coeffs, options)?;
    let n = prepared.table.index();
    let k = base.order();
    let ranks = counting_identity(irreps, assignment, n, options.rank_tol)?;

    let lift = build_lift(base, assignment)?;
    let lift_matrix = complexify(&lift.universal_matrix(coeffs));
    let residual_tol = options.lift_residual_tol * lift_matrix.norm().max(1.0);
    let group = irreps.group();
    let subgroup_order = assignment.subgroup.order() as f64;

    let mut collected = Vec::with_capacity(k * n);
    for (rep, &rank) in irreps.irreps().iter().zip(&ranks) {
        if rank == 0 {
            continue;
        }
        let d = rep.dimension();
        let image = rho_image(rep, &prepared.base_matrix)?;
        let (values, vectors) = hermitian_eigen(&image)?;

        // orthonormal basis of {y : ρ(h)ᵀ y = y for all h in H}, obtained
        // from the Hermitian projector (1/|H|)·Σ ρ(h)ᵀ
        let mut projector = DMatrix::<C64>::zeros(d, d);
        for h in assignment.subgroup.elements() {
            projector += rep.matrix_of(group, h)?.transpose();
        }
        projector /= C64::new(subgroup_order, 0.0);
        let (proj_values, proj_vectors) = hermitian_eigen(&projector)?;
        let fixed: Vec<DVector<C64>> = proj_values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.5)
            .map(|(i, _)| proj_vectors.column(i).into_owned())
            .collect();
        if fixed.len() != rank {
            return Err(Error::Internal(format!(
                "fixed space of `{}` has dimension {} but rank(ρ(H)) = {rank}",
                rep.name(),
                fixed.len()
            )));
        }

        // z_i = ρ(gᵢ)ᵀ·y per coset representative, so x_{(u,i)} = zᵢᵀ·w_u
        for (fixed_index, y) in fixed.iter().enumerate() {
            let translates: Vec<DVector<C64>> = prepared
                .table
                .representatives()
                .iter()
                .map(|g| Ok(rep.matrix_of(group, g)?.transpose() * y))
                .collect::<Result<_>>()?;
            for (eigenvector_index, &eigenvalue) in values.iter().enumerate() {
                let w = vectors.column(eigenvector_index);
                let mut x = DVector::<C64>::zeros(k * n);
                for u in 0..k {
                    let w_u = w.rows(u * d, d);
                    for (i, z) in translates.iter().enumerate() {
                        x[u * n + i] = z.dot(&w_u);
                    }
                }
                let norm = x.norm();
                if norm < 1e-10 {
                    return Err(Error::Internal(format!(
                        "lifted vector vanished: irrep `{}`, eigenvalue {eigenvalue}, \
                         eigenvector {eigenvector_index}, fixed vector {fixed_index}",
                        rep.name()
                    )));
                }
                x /= C64::new(norm, 0.0);
                let residual = (&lift_matrix * &x - x.scale(eigenvalue)).norm();
                if residual > residual_tol {
                    return Err(Error::Internal(format!(
                        "lifted vector residual {residual:.3e} exceeds {residual_tol:.3e}: \
                         irrep `{}`, eigenvalue {eigenvalue}, eigenvector {eigenvector_index}, \
                         fixed vector {fixed_index}",
                        rep.name()
                    )));
                }
                collected.push(LiftedEigenvector {
                    eigenvalue,
                    vector: x,
                    irrep: rep.name().to_string(),
                    eigenvector_index,
                    fixed_index,
                    residual,
                });
            }
        }
    }

    if collected.len() != k * n {
        return Err(Error::CountMismatch {
            expected: k * n,
            actual: collected.len(),
        });
    }
    let mut all = DMatrix::<C64>::zeros(k * n, collected.len());
    for (col, lifted) in collected.iter().enumerate() {
        all.set_column(col, &lifted.vector);
    }
    let rank = numerical_rank(&all, options.rank_tol);
    if rank != k * n {
        return Err(Error::Internal(format!(
            "lifted eigenvectors span rank {rank}, expected {}",
            k * n
        )));
    }
    Ok(collected)
}

/// Positional comparison of two eigenvalue multisets after sorting.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub matched: bool,
    pub max_deviation: f64,
    pub count_mismatch: bool,
    /// (first value, second value, |difference|) per sorted position.
    pub rows: Vec<(f64, f64, f64)>,
}

pub fn compare_spectra(a: &Spectrum, b: &Spectrum, tol: f64) -> ComparisonReport {
    if a.len() != b.len() {
        return ComparisonReport {
            matched: false,
            max_deviation: f64::INFINITY,
            count_mismatch: true,
            rows: Vec::new(),
        };
    }
    let rows: Vec<(f64, f64, f64)> = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(&x, &y)| (x, y, (x - y).abs()))
        .collect();
    let max_deviation = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    ComparisonReport {
        matched: max_deviation <= tol,
        max_deviation,
        count_mismatch: false,
        rows,
    }
}

/// Outcome of the Seidel relation check for ordinary voltage assignments.
#[derive(Debug, Clone)]
pub struct SeidelReport {
    /// (irrep name, max deviation of Sp(ρ(B(S))) from {-2λ-1}).
    pub per_irrep: Vec<(String, f64)>,
    /// Deviation of the trivial-irrep block from Sp(nJ - 2B - I).
    pub trivial_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Verifies that in ordinary mode every nontrivial-irrep Seidel eigenvalue
/// is `-2λ-1` for an adjacency eigenvalue `λ` of the same irrep, and that
/// the trivial-irrep block matches the spectrum of `nJ - 2B - I`.
pub fn seidel_relation_check(
    base: &BaseGraph,
    assignment: &VoltageAssignment,
    irreps: &IrrepSet,
    tol: f64,
) -> Result<SeidelReport> {
    if !assignment.subgroup.is_trivial() {
        return Err(Error::Internal(
            "the Seidel relation check applies to ordinary voltage assignments only".into(),
        ));
    }
    if irreps.group() != &assignment.group {
        return Err(Error::GroupMismatch);
    }
    let options = EngineOptions::default();
    let prepared = prepare(base, assignment, Coeffs::SEIDEL, &options)?;
    let n = assignment.group.order() as f64;
    let k = base.order();

    let is_trivial_rep = |rep: &Representation| {
        rep.dimension() == 1
            && (0..irreps.group().order())
                .all(|gi| (rep.matrix(gi)[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12)
    };

    let mut per_irrep = Vec::new();
    let mut trivial_deviation: f64 = 0.0;
    for rep in irreps.irreps() {
        let seidel_image = rho_image(rep, &prepared.base_matrix)?;
        let seidel_eigs = hermitian_eigen(&seidel_image)?.0;
        if is_trivial_rep(rep) {
            // independent route: n·J - 2·A_base - I eigensolved directly
            let a_base = complexify(&base.adjacency_matrix());
            let reference = DMatrix::from_element(k, k, C64::new(n, 0.0))
                - a_base.scale(2.0)
                - DMatrix::<C64>::identity(k, k);
            let reference_eigs = hermitian_eigen(&reference)?.0;
            trivial_deviation = seidel_eigs
                .iter()
                .zip(&reference_eigs)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
        } else {
            let adjacency_image = rho_image(rep, &prepared.components.adjacency)?;
            let adjacency_eigs = hermitian_eigen(&adjacency_image)?.0;
            let mut expected: Vec<f64> =
                adjacency_eigs.iter().map(|l| -2.0 * l - 1.0).collect();
            expected.sort_by(f64::total_cmp);
            let deviation = seidel_eigs
                .iter()
                .zip(&expected)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            per_irrep.push((rep.name().to_string(), deviation));
        }
    }
    let passed = trivial_deviation <= tol && per_irrep.iter().all(|(_, d)| *d <= tol);
    Ok(SeidelReport {
        per_irrep,
        trivial_deviation,
        tol,
        passed,
    })
}
