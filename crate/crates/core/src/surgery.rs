//! Surgery on loops, seen on normal-form diagrams.
//!
//! Surgery along a loop `x` is carried out by first adding a cancelling
//! 1-/2-handle pair whose new 1-handle represents `x`, then erasing the dot
//! on that 1-handle. The circle it becomes gets a second 0-framed meridian,
//! which is used to unlink the first one and cancel it against the
//! accompanying 3-handle. Only the end result is materialized: one new
//! framed circle reading `x`, with framing parity chosen by the surgery.

use crate::diagram::{Handle, NormalFormDiagram};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};

/// Net effect of surgery along `x`: a new handle `(x, parity)` with its
/// 0-framed meridian. The 1-handle count is unchanged.
pub fn surgery_on_loop(d: &NormalFormDiagram, x: &Word, parity: u8) -> Result<NormalFormDiagram> {
    x.check_generators(d.num_one_handles)?;
    if parity > 1 {
        return Err(Error::malformed(format!("surgery parity must be 0 or 1, got {parity}")));
    }
    let mut out = d.clone();
    out.push(Handle::new(x.clone(), i64::from(parity)));
    Ok(out)
}

/// Builds the thickening of the presentation complex by surgery on the
/// relator loops in `#_n S^1 x S^3`, and checks the result against the
/// direct encoding.
pub fn realize_presentation_by_surgery(
    n: usize,
    p: &Presentation,
    framings: &[u8],
) -> Result<NormalFormDiagram> {
    if p.num_generators != n {
        return Err(Error::precondition(format!(
            "presentation has {} generators, surgery starts from {} 1-handles",
            p.num_generators, n
        )));
    }
    if framings.len() != p.num_relators() {
        return Err(Error::precondition(format!(
            "{} framing parities for {} relators",
            framings.len(),
            p.num_relators()
        )));
    }
    let out = p
        .relators
        .iter()
        .zip(framings)
        .try_fold(NormalFormDiagram::one_handles_only(n), |d, (r, &f)| {
            surgery_on_loop(&d, r, f)
        })?;
    let direct = NormalFormDiagram::from_presentation(
        p,
        &framings.iter().map(|&f| i64::from(f)).collect::<Vec<_>>(),
    )?;
    assert_eq!(
        out.canonicalize(),
        direct.canonicalize(),
        "surgery construction disagrees with the direct encoding"
    );
    Ok(out)
}
