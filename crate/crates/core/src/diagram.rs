//! Extended persistence diagrams.
//!
//! Parameters live in the ordered set of ordinary values `(t, Ord)` followed
//! by relative values `(t, Rel)`, where the relative copy runs backwards:
//! `(s, Rel) < (t, Rel)` iff `s > t`. A bar is a half-open interval
//! `[birth, death)` in that order; zero-length bars are never stored.

use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Ord,
    Rel,
}

/// A point of the extended parameter set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtParam {
    pub value: f64,
    pub phase: Phase,
}

impl ExtParam {
    pub fn ord(value: f64) -> Self {
        Self { value, phase: Phase::Ord }
    }

    pub fn rel(value: f64) -> Self {
        Self { value, phase: Phase::Rel }
    }

    /// The extended order: ordinary values ascending, then relative values
    /// descending.
    pub fn cmp_ext(&self, other: &Self) -> Ordering {
        match (self.phase, other.phase) {
            (Phase::Ord, Phase::Ord) => self.value.total_cmp(&other.value),
            (Phase::Rel, Phase::Rel) => other.value.total_cmp(&self.value),
            (Phase::Ord, Phase::Rel) => Ordering::Less,
            (Phase::Rel, Phase::Ord) => Ordering::Greater,
        }
    }
}

/// The four kinds of bars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BarType {
    Ord,
    Rel,
    /// Essential with birth value below death value.
    EssPos,
    /// Essential with birth value above death value.
    EssNeg,
}

impl BarType {
    pub const ALL: [BarType; 4] = [BarType::Ord, BarType::Rel, BarType::EssPos, BarType::EssNeg];

    pub fn name(self) -> &'static str {
        match self {
            BarType::Ord => "ord",
            BarType::Rel => "rel",
            BarType::EssPos => "ess_pos",
            BarType::EssNeg => "ess_neg",
        }
    }
}

/// A half-open bar `[birth, death)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub birth: ExtParam,
    pub death: ExtParam,
}

impl Interval {
    pub fn new(birth: ExtParam, death: ExtParam) -> Self {
        Self { birth, death }
    }

    /// `[(b, Ord), (d, Ord))`.
    pub fn ord(b: f64, d: f64) -> Self {
        Self::new(ExtParam::ord(b), ExtParam::ord(d))
    }

    /// `[(b, Rel), (d, Rel))`; a valid relative bar has `b > d`.
    pub fn rel(b: f64, d: f64) -> Self {
        Self::new(ExtParam::rel(b), ExtParam::rel(d))
    }

    /// `[(b, Ord), (d, Rel))`.
    pub fn ess(b: f64, d: f64) -> Self {
        Self::new(ExtParam::ord(b), ExtParam::rel(d))
    }

    /// Classifies the bar, or `None` if it has zero length or runs backwards.
    pub fn bar_type(&self) -> Option<BarType> {
        if self.birth.cmp_ext(&self.death) != Ordering::Less {
            return None;
        }
        match (self.birth.phase, self.death.phase) {
            (Phase::Ord, Phase::Ord) => Some(BarType::Ord),
            (Phase::Rel, Phase::Rel) => Some(BarType::Rel),
            (Phase::Ord, Phase::Rel) => match self.birth.value.total_cmp(&self.death.value) {
                Ordering::Less => Some(BarType::EssPos),
                Ordering::Greater => Some(BarType::EssNeg),
                // (t, Ord) to (t, Rel) is one of the ephemeral bars.
                Ordering::Equal => None,
            },
            (Phase::Rel, Phase::Ord) => None,
        }
    }

    /// `|birth.value − death.value|`.
    pub fn span(&self) -> f64 {
        (self.birth.value - self.death.value).abs()
    }

    /// Lexicographic order on `(birth value, death value)`.
    pub fn cmp_values(&self, other: &Self) -> Ordering {
        self.birth.value.total_cmp(&other.birth.value).then(self.death.value.total_cmp(&other.death.value))
    }
}

/// The four bar multisets of one homology dimension.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DimDiagram {
    pub ord: Vec<Interval>,
    pub rel: Vec<Interval>,
    pub ess_pos: Vec<Interval>,
    pub ess_neg: Vec<Interval>,
}

impl DimDiagram {
    pub fn bars(&self, ty: BarType) -> &[Interval] {
        match ty {
            BarType::Ord => &self.ord,
            BarType::Rel => &self.rel,
            BarType::EssPos => &self.ess_pos,
            BarType::EssNeg => &self.ess_neg,
        }
    }

    pub fn bars_mut(&mut self, ty: BarType) -> &mut Vec<Interval> {
        match ty {
            BarType::Ord => &mut self.ord,
            BarType::Rel => &mut self.rel,
            BarType::EssPos => &mut self.ess_pos,
            BarType::EssNeg => &mut self.ess_neg,
        }
    }

    /// Files a bar under its type. Zero-length bars are dropped; returns
    /// whether the bar was kept.
    pub fn push(&mut self, bar: Interval) -> bool {
        match bar.bar_type() {
            Some(ty) => {
                self.bars_mut(ty).push(bar);
                true
            }
            None => false,
        }
    }

    pub fn len(&self) -> usize {
        BarType::ALL.iter().map(|&t| self.bars(t).len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every bar, in type order.
    pub fn all_bars(&self) -> impl Iterator<Item = Interval> + '_ {
        BarType::ALL.into_iter().flat_map(move |t| self.bars(t).iter().copied())
    }

    fn sort(&mut self) {
        for ty in BarType::ALL {
            self.bars_mut(ty).sort_by(Interval::cmp_values);
        }
    }
}

/// Extended persistence of a planar shape: homology dimensions 0 and 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExtendedDiagram {
    pub dims: [DimDiagram; 2],
}

impl ExtendedDiagram {
    pub fn dim(&self, k: usize) -> &DimDiagram {
        &self.dims[k]
    }

    pub fn dim_mut(&mut self, k: usize) -> &mut DimDiagram {
        &mut self.dims[k]
    }

    pub fn len(&self) -> usize {
        self.dims.iter().map(DimDiagram::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// A copy with every multiset sorted by `(birth, death)` value, so two
    /// diagrams with equal multisets compare equal with `==`.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        out.dims.iter_mut().for_each(DimDiagram::sort);
        out
    }

    /// Multiset equality with endpoint values within `tolerance`.
    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.dims.iter().zip(&b.dims).all(|(x, y)| {
            BarType::ALL.iter().all(|&t| {
                let (p, q) = (x.bars(t), y.bars(t));
                p.len() == q.len()
                    && p.iter().zip(q).all(|(i, j)| {
                        i.birth.phase == j.birth.phase
                            && i.death.phase == j.death.phase
                            && (i.birth.value - j.birth.value).abs() <= tolerance
                            && (i.death.value - j.death.value).abs() <= tolerance
                    })
            })
        })
    }

    /// Maps every endpoint value through `f`, keeping phases.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        let mut out = self.clone();
        for dim in &mut out.dims {
            for ty in BarType::ALL {
                for bar in dim.bars_mut(ty) {
                    bar.birth.value = f(bar.birth.value);
                    bar.death.value = f(bar.death.value);
                }
            }
        }
        out
    }

    /// The diagram of the opposite direction.
    ///
    /// Ordinary 0-bars and relative 1-bars trade places with values negated,
    /// and each essential bar's endpoints are swapped and negated. Applying
    /// it twice gives back the input. Only the four multisets a planar shape
    /// can populate (`ord_0`, `rel_1`, `ess_pos_0`, `ess_neg_1`) are carried.
    pub fn dual(&self) -> Self {
        let [d0, d1] = &self.dims;
        debug_assert!(
            d0.rel.is_empty() && d1.ord.is_empty() && d0.ess_neg.is_empty() && d1.ess_pos.is_empty(),
            "diagram has bars a planar shape cannot produce"
        );
        let negate = |bars: &[Interval], make: fn(f64, f64) -> Interval, swap: bool| -> Vec<Interval> {
            bars.iter()
                .map(|i| {
                    let (b, d) = (-i.birth.value, -i.death.value);
                    if swap {
                        make(d, b)
                    } else {
                        make(b, d)
                    }
                })
                .collect()
        };
        let mut out = Self::default();
        out.dims[0].ord = negate(&d1.rel, Interval::ord, false);
        out.dims[1].rel = negate(&d0.ord, Interval::rel, false);
        out.dims[0].ess_pos = negate(&d0.ess_pos, Interval::ess, true);
        out.dims[1].ess_neg = negate(&d1.ess_neg, Interval::ess, true);
        out
    }
}

/// Free-function form of [`ExtendedDiagram::dual`].
pub fn dual_diagram(diagram: &ExtendedDiagram) -> ExtendedDiagram {
    diagram.dual()
}
