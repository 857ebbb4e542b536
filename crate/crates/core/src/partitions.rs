//! Partitions of `n` into `t` positive parts, identified with the complete
//! multipartite graph `K_{n_1,...,n_t}`.
//!
//! A [`Partition`] is always stored in canonical (non-increasing) order, so
//! two partitions compare equal exactly when the graphs are isomorphic.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Canonical descending tuple `(n_1 >= n_2 >= ... >= n_t)` with `t >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts `raw` into descending order and validates it.
    pub fn canonicalize(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&bad) = raw.iter().find(|&&p| p < 1) {
            return Err(Error::NonPositivePart(bad));
        }
        if raw.len() < 2 {
            return Err(Error::PartCountBelowTwo(raw.len()));
        }
        let parts = raw.iter().map(|&p| p as usize).collect();
        Ok(Self::from_sorted_unchecked(parts))
    }

    /// Same as [`Partition::canonicalize`] for unsigned input.
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyInput);
        }
        if parts.contains(&0) {
            return Err(Error::NonPositivePart(0));
        }
        if parts.len() < 2 {
            return Err(Error::PartCountBelowTwo(parts.len()));
        }
        Ok(Self::from_sorted_unchecked(parts.to_vec()))
    }

    fn from_sorted_unchecked(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn t(&self) -> usize {
        self.parts.len()
    }

    /// Number of singleton parts.
    pub fn h(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }

    /// Number of parts of size at least two.
    pub fn s(&self) -> usize {
        self.t() - self.h()
    }

    /// Largest part `n_1`.
    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    /// The parts of size at least two, in descending order.
    pub fn nonsingleton_parts(&self) -> &[usize] {
        &self.parts[..self.s()]
    }

    /// Distinct part sizes in descending order, each with its number of occurrences.
    pub fn size_counts(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((size, count)) if *size == p => *count += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    fn prefix_sums(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Applies `step`, moving one unit from part `j` to part `k`.
    pub fn apply(&self, step: MajorizationStep) -> Result<Self> {
        let invalid = || Error::InvalidStep {
            j: step.j,
            k: step.k,
            partition: self.to_string(),
        };
        if step.j >= step.k || step.k >= self.t() || self.parts[step.j] < 2 {
            return Err(invalid());
        }
        let mut parts = self.parts.clone();
        parts[step.j] -= 1;
        parts[step.k] += 1;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid());
        }
        Ok(Self { parts })
    }

    /// All partitions reachable by one elementary step, i.e. every `Y + E_{j,k}`
    /// (with `k > j`) that is still non-increasing.
    pub fn elementary_successors(&self) -> Vec<(MajorizationStep, Partition)> {
        let t = self.t();
        let mut out = Vec::new();
        for j in 0..t {
            // only the last index of a block of equal values can give
            if j + 1 < t && self.parts[j + 1] == self.parts[j] {
                continue;
            }
            for k in (j + 1)..t {
                // only the first index of a block can receive
                if self.parts[k - 1] == self.parts[k] && k - 1 != j {
                    continue;
                }
                let step = MajorizationStep { j, k };
                if let Ok(next) = self.apply(step) {
                    out.push((step, next));
                }
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::EmptyInput);
        }
        let raw = trimmed
            .split(',')
            .map(|tok| {
                tok.trim().parse::<i64>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: format!("{tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::canonicalize(&raw)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Partition", 5)?;
        st.serialize_field("parts", &self.parts)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("t", &self.t())?;
        st.serialize_field("h", &self.h())?;
        st.serialize_field("s", &self.s())?;
        st.end()
    }
}

/// Adds `E_{j,k}`: `-1` at index `j`, `+1` at index `k`, with `k > j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MajorizationStep {
    pub j: usize,
    pub k: usize,
}

/// Outcome of comparing `X` against `Y` in the majorization order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Majorization {
    /// `X` majorizes `Y` and they differ.
    Strict,
    /// Same canonical tuple.
    EqualAfterSort,
    /// Neither majorizes the other.
    Incomparable,
    /// `Y` strictly majorizes `X`.
    NotMajorized,
}

/// Compares `x` against `y` via prefix sums of the descending tuples.
pub fn majorizes(x: &Partition, y: &Partition) -> Result<Majorization> {
    if x.n() != y.n() {
        return Err(Error::MismatchedTotals(x.n(), y.n()));
    }
    if x.t() != y.t() {
        return Err(Error::MismatchedLength(x.t(), y.t()));
    }
    if x == y {
        return Ok(Majorization::EqualAfterSort);
    }
    let (px, py) = (x.prefix_sums(), y.prefix_sums());
    let x_above = px.iter().zip(&py).all(|(a, b)| a >= b);
    let y_above = px.iter().zip(&py).all(|(a, b)| a <= b);
    Ok(match (x_above, y_above) {
        (true, _) => Majorization::Strict,
        (false, true) => Majorization::NotMajorized,
        (false, false) => Majorization::Incomparable,
    })
}

/// `Y = Y_0 ≻ Y_1 ≻ ... ≻ Y_l = X` where each link adds one elementary step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementaryChain {
    pub start: Partition,
    pub links: Vec<(MajorizationStep, Partition)>,
}

impl ElementaryChain {
    /// All members, starting with `Y` and ending with `X`.
    pub fn members(&self) -> Vec<Partition> {
        std::iter::once(self.start.clone())
            .chain(self.links.iter().map(|(_, p)| p.clone()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }
}

/// Builds a chain of elementary steps from `y` down to `x`.
///
/// Each step takes the first index `j` where the current tuple exceeds the
/// target and the first later index `k` where it falls short, then moves one
/// unit from the end of `j`'s block of equal values to the start of `k`'s
/// block, which keeps the tuple non-increasing and still above `x`.
pub fn elementary_chain(y: &Partition, x: &Partition) -> Result<ElementaryChain> {
    match majorizes(y, x)? {
        Majorization::Strict => {}
        Majorization::EqualAfterSort => return Err(Error::Identical),
        _ => {
            return Err(Error::NotMajorized {
                from: y.to_string(),
                to: x.to_string(),
            })
        }
    }
    let target = x.parts();
    let mut current = y.clone();
    let mut links = Vec::new();
    while current != *x {
        let cur = current.parts();
        let j = (0..cur.len())
            .find(|&i| cur[i] > target[i])
            .expect("current strictly majorizes target");
        let k = (j + 1..cur.len())
            .find(|&i| cur[i] < target[i])
            .expect("shortfall after first excess");
        let j_end = (j..cur.len())
            .take_while(|&i| cur[i] == cur[j])
            .last()
            .unwrap();
        let k_start = (0..=k)
            .rev()
            .take_while(|&i| cur[i] == cur[k])
            .last()
            .unwrap();
        let step = MajorizationStep {
            j: j_end,
            k: k_start,
        };
        current = current.apply(step)?;
        links.push((step, current.clone()));
    }
    Ok(ElementaryChain {
        start: y.clone(),
        links,
    })
}

/// Recovers the elementary step joining two consecutive chain members, if any.
pub fn step_between(from: &Partition, to: &Partition) -> Option<MajorizationStep> {
    if from.t() != to.t() || from.n() != to.n() {
        return None;
    }
    let mut j = None;
    let mut k = None;
    for (i, (&a, &b)) in from.parts().iter().zip(to.parts()).enumerate() {
        match b as i64 - a as i64 {
            0 => {}
            -1 if j.is_none() => j = Some(i),
            1 if k.is_none() => k = Some(i),
            _ => return None,
        }
    }
    match (j, k) {
        (Some(j), Some(k)) if j < k => Some(MajorizationStep { j, k }),
        _ => None,
    }
}

/// Checks that consecutive members of `members` are joined by elementary steps.
pub fn validate_chain(members: &[Partition]) -> Result<ElementaryChain> {
    let (first, rest) = members.split_first().ok_or(Error::EmptyInput)?;
    let mut links = Vec::with_capacity(rest.len());
    let mut prev = first;
    for next in rest {
        let step = step_between(prev, next).ok_or_else(|| Error::NotMajorized {
            from: prev.to_string(),
            to: next.to_string(),
        })?;
        links.push((step, next.clone()));
        prev = next;
    }
    Ok(ElementaryChain {
        start: first.clone(),
        links,
    })
}

fn balanced(total: usize, count: usize) -> Vec<usize> {
    let (q, r) = (total / count, total % count);
    (0..count).map(|i| if i < r { q + 1 } else { q }).collect()
}

fn check_nt(n: usize, t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::InfeasibleParameters(format!("t = {t} < 2")));
    }
    if n < t {
        return Err(Error::InfeasibleParameters(format!("n = {n} < t = {t}")));
    }
    Ok(())
}

fn check_nth(n: usize, t: usize, h: usize) -> Result<()> {
    check_nt(n, t)?;
    if h + 2 > t {
        return Err(Error::InfeasibleParameters(format!(
            "need at least two non-singleton parts, t - h = {}",
            t as i64 - h as i64
        )));
    }
    let s = t - h;
    if n < h + 2 * s {
        return Err(Error::InfeasibleParameters(format!(
            "n - h = {} cannot fill {s} parts of size >= 2",
            n as i64 - h as i64
        )));
    }
    Ok(())
}

/// Complete split graph `S_{n,t} = (n-t+1, 1, ..., 1)`.
pub fn complete_split(n: usize, t: usize) -> Result<Partition> {
    check_nt(n, t)?;
    let mut parts = vec![1; t];
    parts[0] = n - t + 1;
    Ok(Partition { parts })
}

/// Turán graph `T_{n,t}`: parts `ceil(n/t)` and `floor(n/t)`.
pub fn turan(n: usize, t: usize) -> Result<Partition> {
    check_nt(n, t)?;
    Ok(Partition {
        parts: balanced(n, t),
    })
}

/// `S_{n,t,h} = (n-2(t-1)+h, 2, ..., 2, 1, ..., 1)` with `t-h-1` twos and `h` ones.
pub fn split_h(n: usize, t: usize, h: usize) -> Result<Partition> {
    check_nth(n, t, h)?;
    let s = t - h;
    let mut parts = Vec::with_capacity(t);
    parts.push(n + h + 2 - 2 * t);
    parts.extend(std::iter::repeat_n(2, s - 1));
    parts.extend(std::iter::repeat_n(1, h));
    Ok(Partition { parts })
}

/// `T_{n,t,h}`: `n-h` split as evenly as possible into `t-h` parts, plus `h` ones.
pub fn turan_h(n: usize, t: usize, h: usize) -> Result<Partition> {
    check_nth(n, t, h)?;
    let mut parts = balanced(n - h, t - h);
    parts.extend(std::iter::repeat_n(1, h));
    Ok(Partition { parts })
}

/// Iterator over the partitions of `n` into exactly `t` parts, in
/// reverse-lexicographic order (starting from `S_{n,t}`).
#[derive(Clone, Debug)]
pub struct PartitionIter {
    next: Option<Vec<usize>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition { parts: current })
    }
}

// Lexicographically next smaller tuple: lower the rightmost part that can
// absorb a decrement, then refill the tail greedily.
fn successor(a: &[usize]) -> Option<Vec<usize>> {
    let t = a.len();
    let mut tail_sum: usize = a[t - 1];
    for i in (0..t - 1).rev() {
        let cap = a[i] - 1;
        let slots = t - 1 - i;
        let rem = tail_sum + 1;
        if cap >= 1 && rem <= slots * cap {
            let mut out = a[..i].to_vec();
            out.push(cap);
            let mut left = rem;
            for slot in 0..slots {
                let remaining_slots = slots - slot - 1;
                let v = cap.min(left - remaining_slots);
                out.push(v);
                left -= v;
            }
            return Some(out);
        }
        tail_sum += a[i];
    }
    None
}

/// Every partition of `n` into exactly `t` parts.
pub fn enumerate_partitions(n: usize, t: usize) -> Result<PartitionIter> {
    let first = complete_split(n, t)?;
    Ok(PartitionIter {
        next: Some(first.parts),
    })
}

/// Members of `M(n,t,h)`: partitions of `n` into `t` parts with exactly `h` ones.
pub fn enumerate_with_singletons(n: usize, t: usize, h: usize) -> Result<Vec<Partition>> {
    check_nth(n, t, h)?;
    Ok(enumerate_partitions(n, t)?.filter(|p| p.h() == h).collect())
}
