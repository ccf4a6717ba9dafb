//! Ferrers projection of an L-convex polyomino: same multiset of row
//! lengths, rows left-aligned and weakly increasing from bottom to top.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{HVector, RookPolynomial};
use crate::polyomino::{classify, CellRef, Polyomino};
use crate::rook::{rook_polynomial, verify_theorem};

pub fn ferrers_projection(p: &Polyomino) -> Result<Polyomino> {
    if !classify(p).l_convex {
        return Err(Error::NotLConvex);
    }
    let mut lengths = p.row_lengths();
    lengths.sort_unstable();
    let cells = lengths
        .iter()
        .enumerate()
        .flat_map(|(row, &len)| (1..=len as i32).map(move |i| CellRef::new(i, row as i32 + 1)));
    let xstar = Polyomino::new(cells)?;
    let report = classify(&xstar);
    if !report.vertex_sublattice {
        return Err(Error::ProjectionInvariantFailed(format!(
            "vertex set of\n{xstar}\nis not a sublattice (witness {:?})",
            report.sublattice_witness
        )));
    }
    if !report.hv_convex {
        return Err(Error::ProjectionInvariantFailed(format!(
            "\n{xstar}\nis not convex"
        )));
    }
    Ok(xstar)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub xstar: Polyomino,
    pub xstar_grid: String,
    pub rook_equal: bool,
    pub xstar_sublattice: bool,
    /// `thin(X) == thin(X*)`.
    pub thin_transfer: bool,
    pub thin: bool,
    pub r: RookPolynomial,
    pub h_xstar: HVector,
    /// `h_2(X*) < r_2(X)`; only meaningful when `X` is not thin.
    pub strict_at_2: Option<bool>,
}

/// Fails with `Error::Invariant` when the rook polynomial changes under the
/// projection, when a non-thin `X` projects to a thin `X*`, or when a
/// non-thin `X` has `h_2(X*) >= r_2(X)`. A thin `X` with non-thin `X*` is
/// only reported through `thin_transfer`.
pub fn verify_projection(p: &Polyomino) -> Result<ProjectionReport> {
    let xstar = ferrers_projection(p)?;
    let r = rook_polynomial(p)?;
    let r_star = rook_polynomial(&xstar)?;
    let thin = classify(p).thin;
    let star_report = verify_theorem(&xstar)?;
    let rook_equal = r == r_star;
    if !rook_equal {
        return Err(Error::Invariant(format!(
            "r(X) = {r} but r(X*) = {r_star} for\n{p}"
        )));
    }
    if !thin && star_report.thin {
        return Err(Error::Invariant(format!(
            "non-thin\n{p}\nprojects to a thin shape"
        )));
    }
    let strict_at_2 = (!thin).then(|| star_report.h.coeff(2) < r.coeff(2));
    if strict_at_2 == Some(false) {
        return Err(Error::Invariant(format!(
            "h_2(X*) = {} >= r_2(X) = {} for\n{p}",
            star_report.h.coeff(2),
            r.coeff(2)
        )));
    }
    Ok(ProjectionReport {
        xstar_grid: xstar.to_grid(),
        xstar,
        rook_equal,
        xstar_sublattice: true,
        thin_transfer: thin == star_report.thin,
        thin,
        r,
        h_xstar: star_report.h,
        strict_at_2,
    })
}
