//! Normalization and sign choices shared by every backend.
//!
//! Reports embed [`CONVENTIONS_VERSION`]; the entries are also listed in
//! `docs/CONVENTIONS.md`.

use serde::Serialize;

pub const CONVENTIONS_VERSION: &str = "conventions/1";

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Convention {
    pub key: &'static str,
    pub statement: &'static str,
}

pub const LEDGER: &[Convention] = &[
    Convention { key: "clifford.relation", statement: "e_mu e_nu + e_nu e_mu = 2 eta^{mu nu}" },
    Convention { key: "star.phase", statement: "(x1,y1)*(x2,y2) -> (x1+x2, y1+y2) with factor exp(i pi hbar phi), phi = x2.y1 - x1.y2" },
    Convention { key: "commutator.kernel", statement: "2i sin(pi hbar phi)" },
    Convention { key: "antiderivative", statement: "multiply channel hbar by 2 pi / (i hbar)" },
    Convention { key: "pmech.kernel", statement: "(4 pi / hbar) sin(pi hbar phi); 4 pi^2 phi at hbar = 0" },
    Convention { key: "fourier", statement: "atom (x,y) at hbar = 0 -> exp(-2 pi i (q.x + p.y))" },
    Convention { key: "moyal.poly", statement: "(4 pi / hbar) sin((hbar / 4 pi) Pi), Pi = d_q (x) d_p - d_p (x) d_q" },
    Convention { key: "field.kernel", statement: "c1 c2 (4 pi / h_j) sin(pi h_j phi_j) e_j, e_j on the right; 4 pi^2 phi_j e_j at h_j = 0" },
    Convention { key: "vacuum.phase", statement: "sum_j exp(2 pi h_j (e_j s_j - (x^2 + |y|^2)/4))" },
    Convention { key: "s.integral", statement: "normalized mean over the period box prod_l [0, 1/h_l)" },
    Convention { key: "clifford.conjugation", statement: "reversion composed with grade involution" },
    Convention { key: "dw.hamiltonian", statement: "p^mu = eta^{mu mu} d_mu q, H = 1/2 sum eta^{mu mu} (p^mu)^2 + V(q)" },
    Convention { key: "dw.rescaled", statement: "H_C = K(p) - V(q) / C, C = sum_j eta^{jj}" },
];
