//! The two worked pools: the 10-order pool on a 201 cm deckle and the
//! 18-order pool on a 2500 mm deckle.

mod common;

use common::*;
use reelcut::heuristics::{
    best_fit, classify_pool, classify_pool_with, couple_orders, couple_orders_with, exact_min_reels, first_fit,
    SolveError, Threshold,
};
use reelcut::io::{parse_schedule, render_report, ReportFormat};
use reelcut::model::{
    lower_bound_reels, schedule_from_patterns, total_demand_width, trim_loss, validate_schedule, Constraint,
    CutPattern, DeckleSpec, Location, Order, OrderId, OrderPool, Slot, Unit,
};

#[test]
fn demand_width_matches_hand_sums() {
    let sum1: u64 = POOL1_ORDERS.iter().map(|(_, w, c)| w * c).sum();
    let sum2: u64 = POOL2_ORDERS.iter().map(|(_, w, c)| w * c).sum();
    assert_eq!(sum1, 6570);
    assert_eq!(sum2, 307380);
    assert_eq!(total_demand_width(&pool1()), sum1);
    assert_eq!(total_demand_width(&pool2()), sum2);
}

#[test]
fn lower_bounds() {
    assert_eq!(lower_bound_reels(&pool1()), Ok(33));
    assert_eq!(lower_bound_reels(&pool2()), Ok(123));
}

#[test]
fn thirty_two_reels_does_not_follow_from_the_data() {
    // A figure of 32 reels with a 160 cm residual is sometimes quoted for
    // this pool. With 6570 cm of demand on 200 cm reels, 32 reels hold only
    // 6400 cm, so 33 is the bound and its residual is 30 cm.
    let pool = pool1();
    let bound = lower_bound_reels(&pool).unwrap();
    assert_ne!(bound, 32);
    assert!(32 * pool.effective_width() < total_demand_width(&pool));
    assert_eq!(bound * pool.effective_width() - total_demand_width(&pool), 30);
}

#[test]
fn classification_of_the_ten_order_pool() {
    let c = classify_pool(&pool1());
    let wide: Vec<_> = c.wide.iter().map(|(id, _)| id.as_str()).collect();
    let narrow: Vec<_> = c.narrow.iter().map(|(id, _)| id.as_str()).collect();
    assert_eq!(wide, ["D4", "D2", "D5", "D7"]);
    // D9 sits exactly at half width and stays narrow
    assert_eq!(narrow, ["D9", "D8", "D6", "D1", "D10", "D3"]);
}

#[test]
fn coupling_reproduces_the_nine_row_schedule() {
    let pool = pool1();
    let result = couple_orders(&pool).unwrap();
    assert_eq!(result_rows(&result), expected_rows(&POOL1_SCHEDULE));
    assert_eq!(result.used_reels(), 34);
    assert_eq!(result.trim_loss(), 230);
    assert!(validate_schedule(&result.schedule, &pool).is_valid());
}

#[test]
fn coupling_reproduces_the_thirteen_row_schedule() {
    let pool = pool2();
    let result = couple_orders(&pool).unwrap();
    let mut got = result_rows(&result);
    let mut want = expected_rows(&POOL2_SCHEDULE);
    got.sort();
    want.sort();
    assert_eq!(got, want);
    assert_eq!(result.used_reels(), 124);
    assert_eq!(result.trim_loss(), 2620);
    let last = result.patterns.last().unwrap();
    assert_eq!(last.waste_per_reel(), 1250);
    assert_eq!(last.reels(), 1);
}

#[test]
fn half_width_order_classification_does_not_change_the_schedule() {
    let pool = pool2();
    let strict = classify_pool_with(&pool, Threshold::Strict);
    let inclusive = classify_pool_with(&pool, Threshold::Inclusive);
    let d16 = OrderId::from("D16");
    assert!(strict.narrow.iter().any(|(id, _)| *id == d16));
    assert!(inclusive.wide.iter().any(|(id, _)| *id == d16));
    let inclusive_wide: Vec<_> = inclusive.wide.iter().map(|(id, _)| id.as_str()).collect();
    assert_eq!(
        inclusive_wide,
        ["D18", "D1", "D3", "D6", "D7", "D9", "D12", "D13", "D15", "D16"]
    );

    let a = couple_orders_with(&pool, Threshold::Strict, false).unwrap();
    let b = couple_orders_with(&pool, Threshold::Inclusive, false).unwrap();
    assert_eq!(a.schedule, b.schedule);
    assert_eq!(a.patterns, b.patterns);
}

#[test]
fn hand_written_schedule_validates() {
    let pool = pool1();
    let parsed = parse_schedule(&read_data("pool1_schedule.json")).unwrap();
    let report = validate_schedule(&parsed.schedule, &pool);
    assert!(report.is_valid(), "{:?}", report.violations);
    let metrics = trim_loss(&parsed.schedule, &pool).unwrap();
    assert_eq!(metrics.used_reels, 34);
    assert_eq!(metrics.trim_loss, 230);
    assert_eq!(metrics.lower_bound_reels, 33);
    assert_eq!(metrics.demand_width, 6570);
    assert_eq!(metrics.per_slot_waste.iter().sum::<u64>(), 230);
    assert_eq!(metrics.reusable_hint, Some(20));
}

#[test]
fn removing_one_roll_breaks_demand() {
    let pool = pool1();
    let parsed = parse_schedule(&read_data("pool1_schedule.json")).unwrap();
    // drop one D10 roll from the last (D6 + D10 + D10) reel
    let mut slots = parsed.schedule.slots().to_vec();
    let i = slots.iter().rposition(|s| s.get(&OrderId::from("D10")) == 2).unwrap();
    slots[i] = Slot::from_rolls([(OrderId::from("D6"), 1), (OrderId::from("D10"), 1)]).unwrap();
    let report = validate_schedule(&reelcut::model::Schedule::new(slots), &pool);
    assert_eq!(report.violations.len(), 1);
    let v = &report.violations[0];
    assert_eq!(v.constraint, Constraint::DemandExact);
    assert_eq!(v.location, Location::Order(OrderId::from("D10")));
    assert_eq!(v.magnitude, 1);
}

#[test]
fn two_wide_rolls_overflow_the_reel() {
    let pool = pool1();
    let slot = Slot::from_rolls([(OrderId::from("D4"), 2)]).unwrap();
    let report = validate_schedule(&reelcut::model::Schedule::new(vec![slot]), &pool);
    let capacity: Vec<_> = report
        .violations
        .iter()
        .filter(|v| v.constraint == Constraint::Capacity)
        .collect();
    assert_eq!(capacity.len(), 1);
    assert_eq!(capacity[0].magnitude, 100);
}

#[test]
fn pattern_rows_expand_to_slots() {
    let pool = pool1();
    let id = OrderId::from;
    let pair = CutPattern::new([(id("D4"), 1), (id("D3"), 1)], 2, &pool).unwrap();
    let double = CutPattern::new([(id("D9"), 2)], 2, &pool).unwrap();
    let schedule = schedule_from_patterns(&[pair, double], &pool).unwrap();
    assert_eq!(schedule.len(), 4);
    assert_eq!(schedule.slots()[0], schedule.slots()[1]);
    assert_eq!(schedule.slots()[2].get(&id("D9")), 2);
    assert_eq!(schedule.slots()[3].get(&id("D9")), 2);
}

#[test]
fn baselines_do_not_beat_coupling_on_either_pool() {
    for pool in [pool1(), pool2()] {
        let coupling = couple_orders(&pool).unwrap().used_reels();
        let ff = first_fit(&pool).unwrap();
        let bf = best_fit(&pool).unwrap();
        assert!(coupling <= ff.used_reels());
        assert!(validate_schedule(&ff.schedule, &pool).is_valid());
        assert!(validate_schedule(&bf.schedule, &pool).is_valid());
    }
}

#[test]
fn baseline_regression_values() {
    // first-fit and best-fit take rolls in pool order; pinned after the first run
    let t1 = pool1();
    let t2 = pool2();
    let pinned = [
        (first_fit(&t1).unwrap(), 37, 830),
        (best_fit(&t1).unwrap(), 37, 830),
        (first_fit(&t2).unwrap(), 150, 67620),
        (best_fit(&t2).unwrap(), 150, 67620),
    ];
    for (result, reels, waste) in pinned {
        assert_eq!(
            (result.used_reels(), result.trim_loss()),
            (reels, waste),
            "{}",
            result.algorithm
        );
    }
}

#[test]
fn reports_match_golden_files() {
    for (pool, golden) in [
        (pool1(), "golden/pool1_coupling.json"),
        (pool2(), "golden/pool2_coupling.json"),
    ] {
        let result = couple_orders(&pool).unwrap();
        let rendered = render_report(&result, &pool, ReportFormat::Structured).unwrap();
        assert_eq!(rendered.as_bytes(), read_data(golden).as_slice(), "{golden}");
    }
}

#[test]
fn table_report_shape() {
    let pool = pool1();
    let table = render_report(&couple_orders(&pool).unwrap(), &pool, ReportFormat::Table).unwrap();
    let lines: Vec<_> = table.lines().collect();
    // title, header, nine rows, footer
    assert_eq!(lines.len(), 12);
    assert!(lines[1].starts_with("Paired Orders"));
    assert!(lines[2].starts_with("D4 (2) + D3 (2)"));
    assert!(lines[11].starts_with("Total: 34 reels, 230 waste"));

    let pool = pool2();
    let table = render_report(&couple_orders(&pool).unwrap(), &pool, ReportFormat::Table).unwrap();
    let rows: Vec<_> = table.lines().skip(2).take_while(|l| !l.starts_with("Total")).collect();
    assert_eq!(rows.len(), 13);
    assert!(rows[12].starts_with("D16 (1) "));
    assert!(rows[12].trim_end().ends_with("1250"));
}

#[test]
fn exact_search_on_eight_single_rolls() {
    let widths = [150, 145, 135, 105, 55, 50, 90, 80];
    let orders = widths
        .iter()
        .enumerate()
        .map(|(i, &w)| Order::new(format!("r{i}"), w, 1))
        .collect();
    let pool = OrderPool::new(orders, DeckleSpec::new(200, 0, Unit::Cm).unwrap()).unwrap();
    // 810 cm of rolls cannot fit in four 200 cm reels
    assert_eq!(partition_min_reels(&widths, 200), 5);
    assert_eq!(assignment_min_reels(&widths, 200), 5);
    let exact = exact_min_reels(&pool, 1_000_000).unwrap();
    assert!(exact.proven);
    assert_eq!(exact.result.used_reels(), 5);
    assert_eq!(lower_bound_reels(&pool), Ok(5));
}

#[test]
fn exact_refuses_the_worked_pools() {
    assert!(matches!(
        exact_min_reels(&pool1(), 10),
        Err(SolveError::InstanceTooLarge { rolls: 80, limit: 12 })
    ));
}
