//! Dirac-operator pairing and the field-equation residuals.

use serde::Serialize;

use super::{DWHamiltonian, FieldState, HamiltonianKind};
use crate::clifford::{center_constant, Blade, CliffordElement, DenseTable, Signature};
use crate::error::{check_dim, Error, Result};
use crate::galilean::field_poisson_poly;
use crate::grid::Grid;
use crate::poly::Poly;

/// Clifford-valued samples on a space-time grid.
#[derive(Clone, Debug)]
pub struct SpacetimeField {
    table: DenseTable,
    grid: Grid,
    periodic: Vec<bool>,
    data: Vec<f64>,
}

impl SpacetimeField {
    pub fn zeros(sig: &Signature, grid: Grid, periodic: Vec<bool>) -> Result<Self> {
        check_dim(grid.ndim(), periodic.len())?;
        check_dim(sig.generators(), grid.ndim())?;
        let table = DenseTable::new(sig);
        let data = vec![0.0; grid.len() * table.width()];
        Ok(SpacetimeField { table, grid, periodic, data })
    }

    pub fn from_scalar(sig: &Signature, grid: Grid, periodic: Vec<bool>, values: &[f64]) -> Result<Self> {
        let mut f = Self::zeros(sig, grid, periodic)?;
        check_dim(f.grid.len(), values.len())?;
        f.add_component(Blade::SCALAR, values);
        Ok(f)
    }

    pub fn from_fn(
        sig: &Signature,
        grid: Grid,
        periodic: Vec<bool>,
        f: impl Fn(&[f64]) -> CliffordElement,
    ) -> Result<Self> {
        let mut out = Self::zeros(sig, grid, periodic)?;
        let w = out.table.width();
        for i in 0..out.grid.len() {
            let v = f(&out.grid.coords(i));
            if v.signature() != sig {
                return Err(Error::SignatureMismatch);
            }
            out.data[i * w..(i + 1) * w].copy_from_slice(&v.to_dense());
        }
        Ok(out)
    }

    fn add_component(&mut self, blade: Blade, values: &[f64]) {
        let w = self.table.width();
        for (i, v) in values.iter().enumerate() {
            self.data[i * w + blade.0 as usize] += v;
        }
    }

    pub fn signature(&self) -> &Signature {
        self.table.signature()
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn value(&self, i: usize) -> CliffordElement {
        let w = self.table.width();
        CliffordElement::from_dense(self.signature(), &self.data[i * w..(i + 1) * w])
    }

    pub fn component(&self, blade: Blade) -> Vec<f64> {
        let w = self.table.width();
        self.data.chunks(w).map(|c| c[blade.0 as usize]).collect()
    }

    /// Second-order differences: centered inside (wrapping on periodic axes),
    /// one-sided at the ends of the other axes.
    fn derivative(&self, axis: usize) -> Result<Vec<f64>> {
        let a = self.grid.axis(axis);
        if a.len < 3 {
            return Err(Error::GridTooSmall { axis, len: a.len, min: 3 });
        }
        let w = self.table.width();
        let stride = self.grid.stride(axis);
        let h = a.step;
        let mut out = vec![0.0; self.data.len()];
        for i in 0..self.grid.len() {
            let k = (i / stride) % a.len;
            let at = |off: isize| {
                let j = self.grid.shifted(i, axis, off);
                &self.data[j * w..(j + 1) * w]
            };
            let dst = &mut out[i * w..(i + 1) * w];
            let interior = self.periodic[axis] || (k > 0 && k + 1 < a.len);
            for b in 0..w {
                dst[b] = if interior {
                    (at(1)[b] - at(-1)[b]) / (2.0 * h)
                } else if k == 0 {
                    (-3.0 * at(0)[b] + 4.0 * at(1)[b] - at(2)[b]) / (2.0 * h)
                } else {
                    (3.0 * at(0)[b] - 4.0 * at(-1)[b] + at(-2)[b]) / (2.0 * h)
                };
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.signature() != other.signature() {
            return Err(Error::SignatureMismatch);
        }
        if self.grid != other.grid {
            return Err(Error::InvalidGrid("fields sampled on different grids".into()));
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        out.data.iter_mut().zip(&other.data).for_each(|(a, b)| *a -= b);
        Ok(out)
    }

    fn scaled(&self, k: f64) -> Self {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= k);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `Σ |f|²` over samples with time index strictly inside the axis.
    fn interior_sq(&self) -> f64 {
        let w = self.table.width();
        let nt = self.grid.axis(0).len;
        let m = self.grid.len() / nt;
        let lo = if self.periodic[0] { 0 } else { 1 };
        let hi = if self.periodic[0] { nt } else { nt.saturating_sub(1) };
        self.data[lo * m * w..hi * m * w].iter().map(|v| v * v).sum()
    }
}

/// `⟨D, f⟩ = −½ Σ_j (e_j ∂_j f + ∂_j f e_j)`.
pub fn dirac_pairing(f: &SpacetimeField) -> Result<SpacetimeField> {
    let sig = f.signature().clone();
    let w = f.table.width();
    let mut out = SpacetimeField::zeros(&sig, f.grid.clone(), f.periodic.clone())?;
    for j in 0..sig.generators() {
        let d = f.derivative(j)?;
        let ej = CliffordElement::basis(&sig, j)?.to_dense();
        for (i, chunk) in d.chunks(w).enumerate() {
            let mut acc = vec![0.0; w];
            f.table.mul_acc(&ej, chunk, &mut acc);
            f.table.mul_acc(chunk, &ej, &mut acc);
            for b in 0..w {
                out.data[i * w + b] -= 0.5 * acc[b];
            }
        }
    }
    Ok(out)
}

/// `p = Σ_k e_k p^k`.
pub fn combined_polymomenta(state: &FieldState) -> Result<SpacetimeField> {
    let mut out = SpacetimeField::zeros(&state.sig, state.grid.clone(), state.periodic.clone())?;
    for (k, pk) in state.p.iter().enumerate() {
        out.add_component(Blade::generator(k), pk);
    }
    Ok(out)
}

fn scalar_field(state: &FieldState, values: &[f64]) -> Result<SpacetimeField> {
    SpacetimeField::from_scalar(&state.sig, state.grid.clone(), state.periodic.clone(), values)
}

/// Evaluates a Clifford polynomial in `(q, p⁰…pⁿ)` on the state.
fn eval_on_state(state: &FieldState, poly: &Poly<CliffordElement>) -> Result<SpacetimeField> {
    let zero = CliffordElement::zero(&state.sig);
    let mut out = SpacetimeField::zeros(&state.sig, state.grid.clone(), state.periodic.clone())?;
    let w = out.table.width();
    let mut pt = vec![0.0; state.p.len() + 1];
    for i in 0..state.grid.len() {
        pt[0] = state.q[i];
        for (mu, p) in state.p.iter().enumerate() {
            pt[mu + 1] = p[i];
        }
        let v = poly.eval_with(&pt, zero.clone())?;
        out.data[i * w..(i + 1) * w].copy_from_slice(&v.to_dense());
    }
    Ok(out)
}

fn relative(res: &SpacetimeField, lhs: &SpacetimeField, rhs: &SpacetimeField) -> f64 {
    let scale = lhs.interior_sq().max(rhs.interior_sq()).sqrt();
    if scale == 0.0 {
        0.0
    } else {
        res.interior_sq().sqrt() / scale
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub signature: Vec<i8>,
    pub hamiltonian: HamiltonianKind,
    /// `Σ_j η^{jj}`.
    pub center_constant: f64,
    /// Scalar value of the classical bracket `{q, Σ e_k p^k}`.
    pub bracket_constant: f64,
    /// `C = 0`: the rescaled Hamiltonian is undefined and the unscaled one is used.
    pub c_zero: bool,
    /// Relative interior L² norm of `⟨D,q⟩ − {H,q}`.
    pub q_pairing: f64,
    /// Its `e_j` components.
    pub q_pairing_components: Vec<f64>,
    /// Relative norms of `∂_j q − ∂H/∂p^j`.
    pub first_block: Vec<f64>,
    /// Largest `|e_j-component of the q-pairing residual + (∂_j q − ∂H/∂p^j)|`.
    pub separation_mismatch: f64,
    /// Relative interior L² norm of `⟨D,p⟩ − {H_C, p}`.
    pub p_pairing: f64,
}

/// Compares the Dirac pairings of `q` and of the combined polymomenta with
/// the classical field brackets, and the Hamilton equations they separate into.
pub fn residual_check(state: &FieldState, h: &DWHamiltonian) -> Result<ResidualReport> {
    if state.sig != h.sig {
        return Err(Error::SignatureMismatch);
    }
    let sig = &h.sig;
    let g = sig.generators();
    check_dim(g, state.p.len())?;
    let c = center_constant(sig);
    let (hc, c_zero) = match h.rescaled() {
        Ok(hc) => (hc, false),
        Err(_) => (h.clone(), true),
    };
    let one = CliffordElement::scalar(sig, 1.0);
    let mut e = vec![0; g + 1];
    e[0] = 1;
    let q_poly = Poly::monomial(g + 1, e, one.clone())?;
    let mut p_poly = Poly::zero(g + 1);
    for k in 0..g {
        let mut e = vec![0; g + 1];
        e[k + 1] = 1;
        p_poly.add_term(e, CliffordElement::basis(sig, k)?)?;
    }
    let bracket_constant = field_poisson_poly(sig, &q_poly, &p_poly)?
        .coeff(&vec![0; g + 1])
        .map(|v| v.scalar_part())
        .unwrap_or(0.0);

    let hpoly = hc.clifford_poly();
    let q_field = scalar_field(state, &state.q)?;
    let lhs_q = dirac_pairing(&q_field)?;
    let rhs_q = eval_on_state(state, &field_poisson_poly(sig, &hpoly, &q_poly)?)?;
    let res_q = lhs_q.sub(&rhs_q)?;

    let mut q_pairing_components = Vec::with_capacity(g);
    let mut first_block = Vec::with_capacity(g);
    let mut separation_mismatch: f64 = 0.0;
    for j in 0..g {
        let blade = Blade::generator(j);
        let comp = res_q.component(blade);
        let dq = q_field.derivative(j)?;
        let w = q_field.table.width();
        let dq: Vec<f64> = dq.chunks(w).map(|c| c[0]).collect();
        let block: Vec<f64> = (0..dq.len()).map(|i| dq[i] - hc.d_dp(j, state.p[j][i])).collect();
        for (a, b) in comp.iter().zip(&block) {
            separation_mismatch = separation_mismatch.max((a + b).abs());
        }
        let proj = |v: &[f64]| scalar_field(state, v);
        q_pairing_components.push(relative(&proj(&comp)?, &lhs_q, &rhs_q));
        first_block.push(relative(&proj(&block)?, &proj(&dq)?, &proj(&state.p[j])?.scaled(h.kinetic[j])));
    }

    let lhs_p = dirac_pairing(&combined_polymomenta(state)?)?;
    let rhs_p = eval_on_state(state, &field_poisson_poly(sig, &hpoly, &p_poly)?)?;
    let p_pairing = relative(&lhs_p.sub(&rhs_p)?, &lhs_p, &rhs_p);

    Ok(ResidualReport {
        signature: sig.diag().to_vec(),
        hamiltonian: hc.kind,
        center_constant: c,
        bracket_constant,
        c_zero,
        q_pairing: relative(&res_q, &lhs_q, &rhs_q),
        q_pairing_components,
        first_block,
        separation_mismatch,
        p_pairing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Axis;

    fn grid2(n: usize) -> Grid {
        Grid::new(vec![Axis::new(0.0, 0.1, n).unwrap(), Axis::periodic(0.0, 1.0, n).unwrap()]).unwrap()
    }

    #[test]
    fn pairing_of_coordinates_and_constants() {
        let sig = Signature::parse("+1,-1").unwrap();
        let g = grid2(8);
        let t: Vec<f64> = (0..g.len()).map(|i| g.coords(i)[0]).collect();
        let f = SpacetimeField::from_scalar(&sig, g.clone(), vec![false, true], &t).unwrap();
        let d = dirac_pairing(&f).unwrap();
        let e0 = CliffordElement::basis(&sig, 0).unwrap().scale(-1.0);
        for i in 0..g.len() {
            assert!(d.value(i).max_abs_diff(&e0) < 1e-12);
        }
        let c = SpacetimeField::from_scalar(&sig, g.clone(), vec![false, true], &vec![3.0; g.len()]).unwrap();
        assert_eq!(dirac_pairing(&c).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn combined_constant_e0() {
        let sig = Signature::euclidean_negative(2);
        let g = grid2(5);
        let st = FieldState::from_fn(&sig, g, |_| 0.0, |mu, _| if mu == 0 { 1.0 } else { 0.0 }).unwrap();
        let p = combined_polymomenta(&st).unwrap();
        assert_eq!(p.value(7), CliffordElement::basis(&sig, 0).unwrap());
    }
}
