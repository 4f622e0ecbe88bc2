use onsup_core::harness::plot::{write_batch_csv, write_trace_csv};
use onsup_core::harness::rng::run_seed;
use onsup_core::harness::surveillance::{build_surveillance_example, write_fixtures};
use onsup_core::harness::{simulate_batch, simulate_run, simulate_run_with_transcript, write_transcript};
use onsup_core::ranking::{classify, TransitionClass};
use onsup_core::{
    build_product, compute_ranking, load_des_str, translate, LinearSchedule, ProductAutomaton, RankingFunction,
};

fn setup() -> (ProductAutomaton, RankingFunction) {
    let ex = build_surveillance_example();
    let d = translate(&ex.formula, ex.plant.ap()).unwrap();
    let p = build_product(&ex.plant, &d).unwrap();
    let r = compute_ranking(&p);
    (p, r)
}

#[test]
fn identical_seeds_give_identical_records_and_transcripts() {
    let (p, r) = setup();
    let s = LinearSchedule::new(-0.5, 30.0, r.alpha()).unwrap();
    let (a, ta) = simulate_run_with_transcript(&p, &r, &s, 99, 10_000).unwrap();
    let (b, tb) = simulate_run_with_transcript(&p, &r, &s, 99, 10_000).unwrap();
    assert_eq!(a, b);
    let (mut ja, mut jb) = (Vec::new(), Vec::new());
    write_transcript(&ta, &mut ja).unwrap();
    write_transcript(&tb, &mut jb).unwrap();
    assert_eq!(ja, jb);
    assert_eq!(ta.len(), a.steps);
}

#[test]
fn sequential_and_parallel_batches_agree() {
    let (p, r) = setup();
    let configs = [(-0.5, 30.0), (-2.0, 30.0)];
    let seq = simulate_batch(&p, &r, &configs, 200, 17, 10_000, false).unwrap();
    let par = simulate_batch(&p, &r, &configs, 200, 17, 10_000, true).unwrap();
    assert_eq!(seq, par);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    write_batch_csv(&seq, &mut a).unwrap();
    write_batch_csv(&par, &mut b).unwrap();
    assert_eq!(a, b);
    assert!(seq.iter().all(|s| s.accepted_count == 200));
}

#[test]
fn single_run_batch_matches_the_run() {
    let (p, r) = setup();
    let s = simulate_batch(&p, &r, &[(-0.5, 20.0)], 1, 5, 10_000, false).unwrap()[0];
    let rec = simulate_run(
        &p,
        &r,
        &LinearSchedule::new(-0.5, 20.0, r.alpha()).unwrap(),
        run_seed(5, 0),
        10_000,
    )
    .unwrap();
    assert_eq!(s.mean_steps, rec.steps as f64);
    assert_eq!(s.mean_pattern_size, rec.mean_pattern_size());
    assert_eq!((s.std_steps, s.std_pattern_size), (0.0, 0.0));
}

#[test]
fn master_seeds_give_statistically_stable_means() {
    let (p, r) = setup();
    let a = simulate_batch(&p, &r, &[(-0.5, 30.0)], 500, 1, 10_000, true).unwrap()[0];
    let b = simulate_batch(&p, &r, &[(-0.5, 30.0)], 500, 2, 10_000, true).unwrap()[0];
    let se = |x: f64, y: f64| ((x * x + y * y) / 500.0).sqrt();
    assert!((a.mean_steps - b.mean_steps).abs() <= 3.0 * se(a.std_steps, b.std_steps));
    assert!((a.mean_pattern_size - b.mean_pattern_size).abs() <= 3.0 * se(a.std_pattern_size, b.std_pattern_size));
}

#[test]
fn generous_schedule_shows_neutral_steps() {
    let (p, r) = setup();
    let s = LinearSchedule::new(-0.5, 30.0, r.alpha()).unwrap();
    let neutral = (0..20)
        .map(|seed| simulate_run(&p, &r, &s, seed, 10_000).unwrap())
        .flat_map(|rec| {
            (0..rec.steps)
                .map(|k| classify(&p, &r, rec.states[k], rec.events[k], rec.states[k + 1]).unwrap())
                .collect::<Vec<_>>()
        })
        .filter(|&c| c == TransitionClass::Neutral)
        .count();
    assert!(neutral > 0);
}

#[test]
fn trace_csv_has_one_row_per_visited_state() {
    let (p, r) = setup();
    let s = LinearSchedule::new(-0.5, 20.0, r.alpha()).unwrap();
    let rec = simulate_run(&p, &r, &s, 8, 10_000).unwrap();
    let mut buf = Vec::new();
    write_trace_csv(std::slice::from_ref(&rec), &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), rec.steps + 2);
    assert!(!text.contains('\r'));
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(last[..2], [rec.steps.to_string().as_str(), "0"]);
}

#[test]
fn fixtures_are_written_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let files = write_fixtures(dir.path()).unwrap();
    assert_eq!(files.len(), 5);
    let plant = load_des_str(&std::fs::read_to_string(dir.path().join("plant.json")).unwrap()).unwrap();
    assert_eq!((plant.num_states(), plant.num_transitions()), (18, 40));
}
