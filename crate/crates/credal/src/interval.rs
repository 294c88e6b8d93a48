//! Finite unions of real intervals with open/closed endpoints.
//!
//! [`IntervalSet`] is the region algebra the rest of the crate is built on:
//! focal regions, query events, and prediction sets are all interval sets.
//! A set is kept in canonical form at all times: pieces are sorted, pairwise
//! disjoint, and non-adjacent. Two pieces that touch in a shared endpoint are
//! merged exactly when at least one side contains that endpoint, so
//! `(1,2] ∪ (2,3)` collapses to `(1,3)` while `(1,2) ∪ (2,3)` stays two
//! pieces (the point 2 is missing from both). Single points are degenerate
//! closed pieces `[a,a]`. Unbounded endpoints use `±inf` and are always open.

use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// One contiguous interval with independently open or closed endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub lo_open: bool,
    pub hi: f64,
    pub hi_open: bool,
}

impl Piece {
    /// Validates endpoint ordering: `lo < hi`, or `lo == hi` with both ends
    /// closed (a point). Infinite endpoints must be open, NaN is rejected.
    pub fn new(lo: f64, lo_open: bool, hi: f64, hi_open: bool) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::InvalidInput("interval endpoint is NaN".into()));
        }
        if lo.is_infinite() && !lo_open || hi.is_infinite() && !hi_open {
            return Err(Error::InvalidInput(
                "infinite interval endpoints must be open".into(),
            ));
        }
        if lo > hi {
            return Err(Error::InvalidInput(format!(
                "interval endpoints out of order: lo={lo} > hi={hi}"
            )));
        }
        if lo == hi && (lo_open || hi_open) {
            return Err(Error::InvalidInput(format!(
                "degenerate interval at {lo} must be closed on both ends"
            )));
        }
        Ok(Piece { lo, lo_open, hi, hi_open })
    }

    /// The degenerate closed interval `[a,a]`.
    pub fn point(a: f64) -> Result<Self> {
        Piece::new(a, false, a, false)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        (x > self.lo || (x == self.lo && !self.lo_open))
            && (x < self.hi || (x == self.hi && !self.hi_open))
    }

    /// True if `self` ends strictly before `other` begins with no shared point
    /// covered by either side, i.e. the two cannot be merged into one piece.
    fn separated_from(&self, other: &Piece) -> bool {
        self.hi < other.lo || (self.hi == other.lo && self.hi_open && other.lo_open)
    }

    /// True if every point of `inner` lies in `self`.
    fn covers(&self, inner: &Piece) -> bool {
        let lo_ok = self.lo < inner.lo || (self.lo == inner.lo && (!self.lo_open || inner.lo_open));
        let hi_ok = self.hi > inner.hi || (self.hi == inner.hi && (!self.hi_open || inner.hi_open));
        lo_ok && hi_ok
    }

    /// Intersection of two pieces, `None` when empty.
    fn intersect(&self, other: &Piece) -> Option<Piece> {
        let (lo, lo_open) = if self.lo > other.lo {
            (self.lo, self.lo_open)
        } else if other.lo > self.lo {
            (other.lo, other.lo_open)
        } else {
            (self.lo, self.lo_open || other.lo_open)
        };
        let (hi, hi_open) = if self.hi < other.hi {
            (self.hi, self.hi_open)
        } else if other.hi < self.hi {
            (other.hi, other.hi_open)
        } else {
            (self.hi, self.hi_open || other.hi_open)
        };
        if lo < hi || (lo == hi && !lo_open && !hi_open) {
            Some(Piece { lo, lo_open, hi, hi_open })
        } else {
            None
        }
    }
}

/// A canonical finite union of disjoint intervals. The empty set has no pieces.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet {
    pieces: Vec<Piece>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { pieces: Vec::new() }
    }

    /// A single point `{a}`.
    pub fn point(a: f64) -> Result<Self> {
        Ok(IntervalSet { pieces: vec![Piece::point(a)?] })
    }

    /// A single interval.
    pub fn interval(lo: f64, lo_open: bool, hi: f64, hi_open: bool) -> Result<Self> {
        Ok(IntervalSet { pieces: vec![Piece::new(lo, lo_open, hi, hi_open)?] })
    }

    /// Builds a set from arbitrary pieces, canonicalizing by union.
    pub fn from_pieces(pieces: Vec<Piece>) -> Self {
        IntervalSet { pieces: canonicalize(pieces) }
    }

    /// Accepts only input that is already canonical (sorted, disjoint,
    /// non-adjacent); anything else is an invalid-input error. Use
    /// [`IntervalSet::from_pieces`] to canonicalize instead.
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        let canon = canonicalize(pieces.clone());
        if canon != pieces {
            return Err(Error::InvalidInput(
                "pieces are not in canonical form (sorted, disjoint, non-adjacent)".into(),
            ));
        }
        Ok(IntervalSet { pieces })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        // Candidate piece: the last one starting at or before x.
        let idx = self.pieces.partition_point(|p| p.lo <= x);
        idx > 0 && self.pieces[idx - 1].contains(x)
    }

    /// Total Lebesgue measure; points contribute 0, unbounded pieces give ∞.
    pub fn lebesgue(&self) -> f64 {
        self.pieces.iter().map(Piece::len).sum()
    }

    /// Smallest and largest endpoint, `None` for the empty set.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        match (self.pieces.first(), self.pieces.last()) {
            (Some(a), Some(b)) => Some((a.lo, b.hi)),
            _ => None,
        }
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = Vec::with_capacity(self.pieces.len() + other.pieces.len());
        all.extend_from_slice(&self.pieces);
        all.extend_from_slice(&other.pieces);
        IntervalSet::from_pieces(all)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (a, b) = (&self.pieces, &other.pieces);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if let Some(p) = a[i].intersect(&b[j]) {
                out.push(p);
            }
            // Advance whichever piece ends first; on an exact shared end,
            // the open one ends first, and equal ends advance both.
            if a[i].hi < b[j].hi {
                i += 1;
            } else if b[j].hi < a[i].hi {
                j += 1;
            } else if a[i].hi_open == b[j].hi_open {
                i += 1;
                j += 1;
            } else if a[i].hi_open {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Pairwise intersections of canonical sets are already canonical.
        IntervalSet { pieces: out }
    }

    /// Complement within the whole real line.
    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = (f64::NEG_INFINITY, true);
        for p in &self.pieces {
            let (lo, lo_open) = cursor;
            let (hi, hi_open) = (p.lo, !p.lo_open);
            if lo < hi || (lo == hi && !lo_open && !hi_open) {
                out.push(Piece { lo, lo_open, hi, hi_open });
            }
            cursor = (p.hi, !p.hi_open);
        }
        let (lo, lo_open) = cursor;
        if lo < f64::INFINITY {
            out.push(Piece { lo, lo_open, hi: f64::INFINITY, hi_open: true });
        }
        IntervalSet { pieces: out }
    }

    /// Complement of `self` relative to `support`.
    pub fn complement_within(&self, support: &IntervalSet) -> IntervalSet {
        support.intersect(&self.complement())
    }

    /// True if every point of `self` lies in `other`. The empty set is a
    /// subset of everything.
    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        let mut j = 0;
        'outer: for p in &self.pieces {
            while j < other.pieces.len() {
                let q = &other.pieces[j];
                if q.hi < p.lo || (q.hi == p.lo && (q.hi_open || p.lo_open)) {
                    // q ends before p could be covered by it.
                    j += 1;
                    continue;
                }
                // Since `other` is canonical, a contiguous piece fits in at
                // most one of its pieces; this is the only candidate.
                if q.covers(p) {
                    continue 'outer;
                }
                return false;
            }
            return false;
        }
        true
    }

    pub fn intersects(&self, other: &IntervalSet) -> bool {
        let (a, b) = (&self.pieces, &other.pieces);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].intersect(&b[j]).is_some() {
                return true;
            }
            if a[i].separated_from(&b[j]) {
                i += 1;
            } else {
                j += 1;
            }
        }
        false
    }

    /// Lebesgue measure of the overlap with the plain interval `(lo, hi)`.
    /// Endpoint openness is irrelevant for measure.
    pub fn overlap_len(&self, lo: f64, hi: f64) -> f64 {
        self.pieces
            .iter()
            .map(|p| (p.hi.min(hi) - p.lo.max(lo)).max(0.0))
            .sum()
    }
}

fn canonicalize(mut pieces: Vec<Piece>) -> Vec<Piece> {
    // Closed starts sort before open starts at the same endpoint.
    pieces.sort_by(|a, b| {
        a.lo.partial_cmp(&b.lo)
            .expect("piece endpoints are never NaN")
            .then(a.lo_open.cmp(&b.lo_open))
    });
    let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        match out.last_mut() {
            Some(last) if !last.separated_from(&p) => {
                // Extend `last` to the later of the two ends.
                if p.hi > last.hi {
                    last.hi = p.hi;
                    last.hi_open = p.hi_open;
                } else if p.hi == last.hi {
                    last.hi_open = last.hi_open && p.hi_open;
                }
            }
            _ => out.push(p),
        }
    }
    out
}

fn write_endpoint(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    if x == f64::NEG_INFINITY {
        write!(f, "-inf")
    } else if x == f64::INFINITY {
        write!(f, "inf")
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "empty");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if p.lo_open { '(' } else { '[' })?;
            write_endpoint(f, p.lo)?;
            write!(f, ",")?;
            write_endpoint(f, p.hi)?;
            write!(f, "{}", if p.hi_open { ')' } else { ']' })?;
        }
        Ok(())
    }
}

fn parse_endpoint(s: &str) -> Result<f64> {
    match s.trim() {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        t => t
            .parse::<f64>()
            .map_err(|_| Error::InvalidInput(format!("cannot parse interval endpoint '{t}'"))),
    }
}

impl FromStr for IntervalSet {
    type Err = Error;

    /// Parses a comma-separated list of interval literals, e.g.
    /// `"[0,2]"`, `"(3.9,5.1)"`, `"[0,2],(5,inf)"`. `""` and `"empty"` give
    /// the empty set. Overlapping literals are unioned.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "empty" {
            return Ok(IntervalSet::empty());
        }
        let mut pieces = Vec::new();
        let mut rest = s;
        loop {
            rest = rest.trim_start();
            let lo_open = match rest.chars().next() {
                Some('(') => true,
                Some('[') => false,
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "expected '(' or '[' at '{rest}' in interval list '{s}'"
                    )))
                }
            };
            let end = rest
                .find([')', ']'])
                .ok_or_else(|| Error::InvalidInput(format!("unterminated interval in '{s}'")))?;
            let hi_open = rest.as_bytes()[end] == b')';
            let body = &rest[1..end];
            let (lo_s, hi_s) = body.split_once(',').ok_or_else(|| {
                Error::InvalidInput(format!("interval '{}' needs two endpoints", &rest[..=end]))
            })?;
            pieces.push(Piece::new(parse_endpoint(lo_s)?, lo_open, parse_endpoint(hi_s)?, hi_open)?);
            rest = rest[end + 1..].trim_start();
            if rest.is_empty() {
                break;
            }
            rest = rest
                .strip_prefix(',')
                .ok_or_else(|| Error::InvalidInput(format!("expected ',' between intervals in '{s}'")))?;
        }
        Ok(IntervalSet::from_pieces(pieces))
    }
}

/// Serializes as a list of `[lo, lo_open, hi, hi_open]` quadruples with the
/// string sentinels `"-inf"` / `"inf"` for unbounded endpoints.
impl Serialize for Piece {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        #[serde(untagged)]
        enum Endpoint {
            Finite(f64),
            Unbounded(&'static str),
        }
        let ep = |x: f64| {
            if x == f64::NEG_INFINITY {
                Endpoint::Unbounded("-inf")
            } else if x == f64::INFINITY {
                Endpoint::Unbounded("inf")
            } else {
                Endpoint::Finite(x)
            }
        };
        let mut seq = serializer.serialize_seq(Some(4))?;
        seq.serialize_element(&ep(self.lo))?;
        seq.serialize_element(&self.lo_open)?;
        seq.serialize_element(&ep(self.hi))?;
        seq.serialize_element(&self.hi_open)?;
        seq.end()
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.pieces.serialize(serializer)
    }
}
