//! Orders, pools, cutting patterns and schedules.
//!
//! A schedule is a list of slots, one per jumbo reel. Each slot maps the
//! orders it cuts to the number of rolls `r` cut for that order on the reel.
//! Presence of an order in a slot is the binary "order is cut on this reel"
//! decision; absence means it is not. Keeping the indicator implicit rules
//! out the "included but zero rolls" state entirely.
//!
//! All widths are integers in the unit carried by the pool's [`DeckleSpec`].
//! Every computation uses the *effective* width, i.e. the nominal deckle
//! minus the trim allowance lost to the slitting knives.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// A width in the pool's length unit.
pub type Length = u64;

/// Identifier of one order line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderId(String);

impl OrderId {
    pub fn new(id: impl Into<String>) -> Self {
        OrderId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for OrderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for OrderId {
    fn from(s: &str) -> Self {
        OrderId(s.to_owned())
    }
}

impl From<String> for OrderId {
    fn from(s: String) -> Self {
        OrderId(s)
    }
}

/// Length unit tag. No conversion between units is ever performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Cm,
    Mm,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::Cm => "cm",
            Unit::Mm => "mm",
        })
    }
}

impl FromStr for Unit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cm" => Ok(Unit::Cm),
            "mm" => Ok(Unit::Mm),
            other => Err(format!("unknown unit {other:?}, expected cm or mm")),
        }
    }
}

/// Width of the jumbo reel and the allowance lost to trimming.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeckleSpec {
    nominal_width: Length,
    trim_allowance: Length,
    unit: Unit,
}

impl DeckleSpec {
    pub fn new(nominal_width: Length, trim_allowance: Length, unit: Unit) -> Result<Self, ModelError> {
        if nominal_width == 0 {
            return Err(ModelError::ZeroDeckle);
        }
        if trim_allowance >= nominal_width {
            return Err(ModelError::AllowanceTooLarge {
                nominal: nominal_width,
                allowance: trim_allowance,
            });
        }
        Ok(DeckleSpec {
            nominal_width,
            trim_allowance,
            unit,
        })
    }

    pub fn nominal_width(&self) -> Length {
        self.nominal_width
    }

    pub fn trim_allowance(&self) -> Length {
        self.trim_allowance
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    /// Usable width of one reel: nominal width minus trim allowance.
    pub fn effective_width(&self) -> Length {
        self.nominal_width - self.trim_allowance
    }
}

/// One customer demand line: `count` rolls of the same `width`.
#[derive(Clone, Debug, PartialEq)]
pub struct Order {
    pub id: OrderId,
    pub width: Length,
    pub count: u32,
    /// Carried through untouched; never used in any computation.
    pub weight: Option<f64>,
}

impl Order {
    pub fn new(id: impl Into<OrderId>, width: Length, count: u32) -> Self {
        Order {
            id: id.into(),
            width,
            count,
            weight: None,
        }
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = Some(weight);
        self
    }

    /// Total width demanded by this order, `count * width`.
    pub fn demand_width(&self) -> Length {
        self.width * Length::from(self.count)
    }
}

/// The demand pool: an ordered list of orders plus the deckle they are cut from.
///
/// List order matters: every solver breaks ties on pool position.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderPool {
    orders: Vec<Order>,
    deckle: DeckleSpec,
    index: HashMap<OrderId, usize>,
}

impl OrderPool {
    /// Builds a pool, rejecting duplicate ids, zero widths and zero counts.
    ///
    /// Orders wider than the effective width are accepted here; operations
    /// that need a satisfiable pool reject them with
    /// [`ModelError::Unsatisfiable`].
    pub fn new(orders: Vec<Order>, deckle: DeckleSpec) -> Result<Self, ModelError> {
        let mut index = HashMap::with_capacity(orders.len());
        let mut total: Length = 0;
        for (pos, order) in orders.iter().enumerate() {
            if order.width == 0 {
                return Err(ModelError::NonPositiveWidth(order.id.clone()));
            }
            if order.count == 0 {
                return Err(ModelError::ZeroCount(order.id.clone()));
            }
            if let Some(w) = order.weight {
                if !(w.is_finite() && w >= 0.0) {
                    return Err(ModelError::InvalidWeight(order.id.clone()));
                }
            }
            if index.insert(order.id.clone(), pos).is_some() {
                return Err(ModelError::DuplicateId(order.id.clone()));
            }
            total = order
                .width
                .checked_mul(Length::from(order.count))
                .and_then(|d| total.checked_add(d))
                .ok_or(ModelError::Overflow)?;
        }
        Ok(OrderPool { orders, deckle, index })
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    pub fn deckle(&self) -> &DeckleSpec {
        &self.deckle
    }

    pub fn effective_width(&self) -> Length {
        self.deckle.effective_width()
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn get(&self, id: &OrderId) -> Option<&Order> {
        self.index.get(id).map(|&i| &self.orders[i])
    }

    /// Position of the order in the pool list.
    pub fn position(&self, id: &OrderId) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Total number of rolls over all orders.
    pub fn total_rolls(&self) -> u64 {
        self.orders.iter().map(|o| u64::from(o.count)).sum()
    }

    /// Fails on the first order (in pool order) wider than the effective width.
    pub fn ensure_satisfiable(&self) -> Result<(), ModelError> {
        let effective_width = self.effective_width();
        match self.orders.iter().find(|o| o.width > effective_width) {
            Some(o) => Err(ModelError::Unsatisfiable {
                id: o.id.clone(),
                width: o.width,
                effective_width,
            }),
            None => Ok(()),
        }
    }
}

/// Total width to be cut: the sum of `count * width` over all orders.
pub fn total_demand_width(pool: &OrderPool) -> Length {
    pool.orders.iter().map(Order::demand_width).sum()
}

/// Minimum conceivable number of reels, `ceil(demand / effective width)`.
pub fn lower_bound_reels(pool: &OrderPool) -> Result<u64, ModelError> {
    pool.ensure_satisfiable()?;
    Ok(total_demand_width(pool).div_ceil(pool.effective_width()))
}

/// Sum of `width * multiplicity` over a slot or pattern composition.
fn used_width<'a>(rolls: impl Iterator<Item = (&'a OrderId, &'a u32)>, pool: &OrderPool) -> Result<Length, ModelError> {
    let mut used = 0;
    for (id, &n) in rolls {
        let order = pool.get(id).ok_or_else(|| ModelError::UnknownOrder(id.clone()))?;
        used += order.width * Length::from(n);
    }
    Ok(used)
}

/// A multiset of orders cut side by side from one reel, repeated on `reels` reels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutPattern {
    composition: IndexMap<OrderId, u32>,
    reels: u32,
    waste_per_reel: Length,
}

impl CutPattern {
    /// Builds a pattern and computes its waste against the pool's effective
    /// width. Repeated ids in `composition` are merged.
    pub fn new(
        composition: impl IntoIterator<Item = (OrderId, u32)>,
        reels: u32,
        pool: &OrderPool,
    ) -> Result<Self, ModelError> {
        let mut merged: IndexMap<OrderId, u32> = IndexMap::new();
        for (id, n) in composition {
            if n == 0 {
                return Err(ModelError::ZeroMultiplicity(id));
            }
            *merged.entry(id).or_insert(0) += n;
        }
        if merged.is_empty() {
            return Err(ModelError::EmptyPattern);
        }
        if reels == 0 {
            return Err(ModelError::ZeroReels);
        }
        let used = used_width(merged.iter(), pool)?;
        let effective_width = pool.effective_width();
        if used > effective_width {
            return Err(ModelError::PatternOverCapacity { used, effective_width });
        }
        Ok(CutPattern {
            composition: merged,
            reels,
            waste_per_reel: effective_width - used,
        })
    }

    /// Order ids with their multiplicity on one reel, in insertion order.
    pub fn composition(&self) -> &IndexMap<OrderId, u32> {
        &self.composition
    }

    pub fn reels(&self) -> u32 {
        self.reels
    }

    pub fn waste_per_reel(&self) -> Length {
        self.waste_per_reel
    }

    pub fn total_waste(&self) -> Length {
        self.waste_per_reel * Length::from(self.reels)
    }
}

/// One reel of a schedule: order id to rolls cut on it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Slot {
    rolls: IndexMap<OrderId, u32>,
}

impl Slot {
    pub fn new() -> Self {
        Slot::default()
    }

    /// Builds a slot from `(id, rolls)` pairs. Repeated ids are merged; a
    /// zero roll count is rejected since absence already encodes "not cut".
    pub fn from_rolls(rolls: impl IntoIterator<Item = (OrderId, u32)>) -> Result<Self, ModelError> {
        let mut slot = Slot::new();
        for (id, n) in rolls {
            if n == 0 {
                return Err(ModelError::ZeroMultiplicity(id));
            }
            slot.add(id, n);
        }
        Ok(slot)
    }

    /// Adds `n` rolls of `id` to the slot.
    pub fn add(&mut self, id: OrderId, n: u32) {
        if n > 0 {
            *self.rolls.entry(id).or_insert(0) += n;
        }
    }

    pub fn rolls(&self) -> &IndexMap<OrderId, u32> {
        &self.rolls
    }

    /// Rolls of `id` cut on this reel; zero when the order is absent.
    pub fn get(&self, id: &OrderId) -> u32 {
        self.rolls.get(id).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.rolls.is_empty()
    }
}

/// A complete cutting schedule: one slot per reel, in cutting order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Schedule {
    slots: Vec<Slot>,
}

impl Schedule {
    pub fn new(slots: Vec<Slot>) -> Self {
        Schedule { slots }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Number of reels the schedule uses.
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Rolls of `id` summed over all slots.
    pub fn rolls_of(&self, id: &OrderId) -> u64 {
        self.slots.iter().map(|s| u64::from(s.get(id))).sum()
    }

    /// Roll-count matrix, one row per slot and one column per pool order.
    pub fn roll_matrix(&self, pool: &OrderPool) -> Vec<Vec<u32>> {
        self.slots
            .iter()
            .map(|slot| pool.orders().iter().map(|o| slot.get(&o.id)).collect())
            .collect()
    }

    /// Binary "order is cut on this reel" matrix, same shape as [`Schedule::roll_matrix`].
    pub fn indicator_matrix(&self, pool: &OrderPool) -> Vec<Vec<bool>> {
        self.slots
            .iter()
            .map(|slot| pool.orders().iter().map(|o| slot.rolls.contains_key(&o.id)).collect())
            .collect()
    }
}

/// Expands patterns into a schedule, one slot per reel repetition, in pattern order.
pub fn schedule_from_patterns(patterns: &[CutPattern], pool: &OrderPool) -> Result<Schedule, ModelError> {
    let mut slots = Vec::with_capacity(patterns.iter().map(|p| p.reels as usize).sum());
    for pattern in patterns {
        if let Some(id) = pattern.composition.keys().find(|id| pool.get(id).is_none()) {
            return Err(ModelError::UnknownOrder(id.clone()));
        }
        let slot = Slot {
            rolls: pattern.composition.clone(),
        };
        slots.extend(std::iter::repeat_n(slot, pattern.reels as usize));
    }
    Ok(Schedule { slots })
}

/// Demand, bound and waste figures of a schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleMetrics {
    pub demand_width: Length,
    pub lower_bound_reels: u64,
    pub used_reels: u64,
    pub trim_loss: Length,
    pub per_slot_waste: Vec<Length>,
    /// Largest single residual, which may still serve a future order.
    pub reusable_hint: Option<Length>,
}

/// Computes per-slot residuals and the overall trim loss of a schedule.
///
/// A slot wider than the reel is an error rather than a negative residual.
pub fn trim_loss(schedule: &Schedule, pool: &OrderPool) -> Result<ScheduleMetrics, ModelError> {
    let effective_width = pool.effective_width();
    let per_slot_waste = schedule
        .slots
        .iter()
        .enumerate()
        .map(|(i, slot)| {
            let used = used_width(slot.rolls.iter(), pool)?;
            effective_width.checked_sub(used).ok_or_else(|| ModelError::Capacity {
                slot: i,
                excess: used - effective_width,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ScheduleMetrics {
        demand_width: total_demand_width(pool),
        lower_bound_reels: lower_bound_reels(pool)?,
        used_reels: schedule.len() as u64,
        trim_loss: per_slot_waste.iter().sum(),
        reusable_hint: per_slot_waste.iter().copied().filter(|&w| w > 0).max(),
        per_slot_waste,
    })
}

/// Which model constraint a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// A slot cuts more than the effective width.
    Capacity,
    /// A slot cuts nothing.
    NonEmptySlot,
    /// An order's rolls over all slots differ from its count.
    DemandExact,
    /// A slot references an id that is not in the pool.
    UnknownOrder,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constraint::Capacity => "capacity",
            Constraint::NonEmptySlot => "non-empty-slot",
            Constraint::DemandExact => "demand-exact",
            Constraint::UnknownOrder => "unknown-order",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Slot(usize),
    Order(OrderId),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Slot(i) => write!(f, "slot {i}"),
            Location::Order(id) => write!(f, "order {id}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub constraint: Constraint,
    pub location: Location,
    /// Excess width for capacity, roll shortfall or surplus for demand.
    pub magnitude: u64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.constraint, self.location, self.magnitude)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every slot for capacity and non-emptiness and every order for
/// exact demand. All violations are collected; nothing short-circuits.
pub fn validate_schedule(schedule: &Schedule, pool: &OrderPool) -> ValidationReport {
    let effective_width = pool.effective_width();
    let mut violations = Vec::new();
    for (i, slot) in schedule.slots.iter().enumerate() {
        if slot.is_empty() {
            violations.push(Violation {
                constraint: Constraint::NonEmptySlot,
                location: Location::Slot(i),
                magnitude: 0,
            });
        }
        let mut used: Length = 0;
        for (id, &n) in &slot.rolls {
            match pool.get(id) {
                Some(order) => used += order.width * Length::from(n),
                None => violations.push(Violation {
                    constraint: Constraint::UnknownOrder,
                    location: Location::Slot(i),
                    magnitude: u64::from(n),
                }),
            }
        }
        if used > effective_width {
            violations.push(Violation {
                constraint: Constraint::Capacity,
                location: Location::Slot(i),
                magnitude: used - effective_width,
            });
        }
    }
    for order in pool.orders() {
        let cut = schedule.rolls_of(&order.id);
        let wanted = u64::from(order.count);
        if cut != wanted {
            violations.push(Violation {
                constraint: Constraint::DemandExact,
                location: Location::Order(order.id.clone()),
                magnitude: cut.abs_diff(wanted),
            });
        }
    }
    ValidationReport { violations }
}
