//! Exhaustive enumeration of contiguous fitting windows.

use crate::model::{Isotherm, Point};

/// Inclusive index range [start, end] into an isotherm, start < end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Window {
    pub start: usize,
    pub end: usize,
}

impl Window {
    /// Number of points covered.
    #[inline]
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// View of the covered points. Panics if the window was not drawn from
    /// an isotherm of sufficient length.
    #[inline]
    pub fn slice<'a>(&self, iso: &'a Isotherm) -> &'a [Point] {
        &iso.points()[self.start..=self.end]
    }
}

/// Every contiguous window with at least two points, in ascending (start,
/// end) order. An isotherm of N points yields N (N - 1) / 2 windows.
pub fn enumerate_windows(iso: &Isotherm) -> Vec<Window> {
    let n = iso.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for start in 0..n {
        for end in start + 1..n {
            out.push(Window { start, end });
        }
    }
    out
}

/// Brute-force construction of the same window set by an independent route:
/// outer loop over end indices, explicit point-by-point slice copies.
/// Exists as a cross-check oracle for tests; production code should use
/// [`enumerate_windows`].
pub fn reference_windows(iso: &Isotherm) -> Vec<(usize, usize, Vec<Point>)> {
    let mut out = Vec::new();
    for end in 0..iso.len() {
        for start in 0..end {
            let mut slice = Vec::new();
            for k in start..=end {
                slice.push(iso.points()[k]);
            }
            out.push((start, end, slice));
        }
    }
    out
}
