//! Opt-in recording of positive-order decisions, so suites can replay every
//! `psd_order` verdict against the sampling oracle.

use std::cell::RefCell;

use super::CMatrix;

/// One verdict of [`psd_order`](super::psd_order): the Hermitian difference `Θ_Q - Θ_P`
/// and whether it was judged positive.
#[derive(Clone, Debug)]
pub struct PsdDecision {
    pub difference: CMatrix,
    /// Size of the coefficient algebra the operators act over.
    pub k: usize,
    /// Relative tolerance the verdict was taken at.
    pub rel_tol: f64,
    pub holds: bool,
}

thread_local! {
    static SINK: RefCell<Option<Vec<PsdDecision>>> = const { RefCell::new(None) };
}

pub(crate) fn record(difference: &CMatrix, k: usize, rel_tol: f64, holds: bool) {
    SINK.with(|sink| {
        if let Some(log) = sink.borrow_mut().as_mut() {
            log.push(PsdDecision {
                difference: difference.clone(),
                k,
                rel_tol,
                holds,
            });
        }
    });
}

/// Runs `f` and returns its result with every positive-order decision it made on
/// this thread. Nested calls see only their own decisions.
pub fn record_psd_decisions<R>(f: impl FnOnce() -> R) -> (R, Vec<PsdDecision>) {
    let outer = SINK.with(|sink| sink.borrow_mut().replace(Vec::new()));
    let result = f();
    let log = SINK.with(|sink| {
        let mut slot = sink.borrow_mut();
        let log = slot.take().unwrap_or_default();
        *slot = outer;
        log
    });
    SINK.with(|sink| {
        if let Some(enclosing) = sink.borrow_mut().as_mut() {
            enclosing.extend(log.iter().cloned());
        }
    });
    (result, log)
}

/// Runs `f` with recording switched off; used by oracles whose probes are not verdicts.
pub(crate) fn without_recording<R>(f: impl FnOnce() -> R) -> R {
    let outer = SINK.with(|sink| sink.borrow_mut().take());
    let result = f();
    SINK.with(|sink| *sink.borrow_mut() = outer);
    result
}
