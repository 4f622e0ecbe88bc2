use onsup_core::des::EventInfo;
use onsup_core::harness::rng::SimRng;
use onsup_core::harness::surveillance::build_surveillance_example;
use onsup_core::{
    build_product, load_des_str, save_des_string, synchronous_product, translate, Des, Error, EventId, Vocabulary,
};

fn random_walk(g: &Des, rng: &mut SimRng, len: usize) -> Vec<String> {
    let n = g.events().len() as u64;
    (0..len)
        .map(|_| g.event(EventId(rng.below(n) as usize)).name.clone())
        .collect()
}

fn ids(g: &Des, names: &[String]) -> Option<Vec<EventId>> {
    names.iter().map(|n| g.event_id(n)).collect()
}

fn projected(g: &Des, names: &[String]) -> Vec<EventId> {
    names.iter().filter_map(|n| g.event_id(n)).collect()
}

#[test]
fn composition_generates_exactly_the_synchronized_strings() {
    let ex = build_surveillance_example();
    let mut rng = SimRng::new(1);
    let mut generated = 0;
    for _ in 0..3000 {
        let len = 1 + rng.below(6) as usize;
        let s = random_walk(&ex.plant, &mut rng, len);
        let both = ex.g_pos.generates(&projected(&ex.g_pos, &s)) && ex.g_task.generates(&projected(&ex.g_task, &s));
        let composite = ex.plant.generates(&ids(&ex.plant, &s).unwrap());
        assert_eq!(composite, both, "{s:?}");
        generated += usize::from(composite);
    }
    assert!(generated > 100);
}

#[test]
fn composite_labels_follow_the_components() {
    let ex = build_surveillance_example();
    let v = ex.plant.ap();
    for x in 0..ex.plant.num_states() {
        let name = ex.plant.state_name(x);
        let (room, task) = name.trim_matches(|c| c == '(' || c == ')').split_once(',').unwrap();
        let mut expected = vec![format!("p{}", &room[1..])];
        if task == "y2" {
            expected.push("qs".into());
        }
        assert_eq!(ex.plant.label(x), v.letter(&expected).unwrap(), "{name}");
    }
}

#[test]
fn corridor_moves_only_to_adjacent_rooms() {
    let ex = build_surveillance_example();
    let g = &ex.g_pos;
    let x0 = g.state_id("x0").unwrap();
    assert_eq!(g.try_step(x0, g.event_id("sigma1").unwrap()), g.state_id("x1"));
    assert_eq!(g.try_step(x0, g.event_id("sigma0").unwrap()), Some(x0));
    assert_eq!(g.try_step(x0, g.event_id("sigma3").unwrap()), None);
    assert!(matches!(
        g.step(x0, g.event_id("sigma3").unwrap()),
        Err(Error::UndefinedTransition { .. })
    ));
    assert_eq!(g.num_transitions(), 16);
    assert_eq!(ex.g_task.num_transitions(), 10);
}

#[test]
fn des_json_round_trip() {
    let ex = build_surveillance_example();
    let text = save_des_string(&ex.plant);
    let back = load_des_str(&text).unwrap();
    assert_eq!(save_des_string(&back), text);
    assert_eq!(back.num_states(), 18);
    assert_eq!(back.num_transitions(), 40);
}

#[test]
fn product_tracks_plant_and_automaton() {
    let ex = build_surveillance_example();
    let g = &ex.plant;
    let d = translate(&ex.formula, g.ap()).unwrap();
    let p = build_product(g, &d).unwrap();
    assert_eq!(p.alpha(), (18 * 6 - 18 + 1) as u32);
    let (g0, z0) = p.projections(p.initial()).unwrap();
    assert_eq!(g0, g.initial());
    assert_eq!(z0, d.next(d.initial(), g.label(g.initial())));
    for x in 0..p.num_states() {
        let (gx, zx) = p.projections(x).unwrap();
        assert_eq!(p.label(x), g.label(gx));
        assert_eq!(p.is_accepting(x), d.is_accepting(zx));
        let plant_moves: Vec<EventId> = g.transitions_from(gx).iter().map(|&(e, _)| e).collect();
        let product_moves: Vec<EventId> = p.transitions_from(x).iter().map(|&(e, _)| e).collect();
        assert_eq!(plant_moves, product_moves);
        for &(e, t) in p.transitions_from(x) {
            let (gt, zt) = p.projections(t).unwrap();
            assert_eq!(Some(gt), g.try_step(gx, e));
            assert_eq!(zt, d.next(zx, g.label(gt)));
        }
    }
}

#[test]
fn conflicting_controllability_is_rejected() {
    let ap = Vocabulary::new(Vec::<String>::new()).unwrap();
    let mk = |controllable| {
        Des::new(
            ap.clone(),
            vec![EventInfo {
                name: "e".into(),
                controllable,
            }],
            vec![("s".into(), onsup_core::Letter::EMPTY)],
            0,
            [(0, EventId(0), 0)],
        )
        .unwrap()
    };
    assert!(matches!(
        synchronous_product(&mk(true), &mk(false)),
        Err(Error::ControllabilityConflict { .. })
    ));
}

#[test]
fn mismatched_vocabularies_are_rejected() {
    let ex = build_surveillance_example();
    let d = translate(&ex.formula, ex.plant.ap()).unwrap();
    assert!(matches!(
        build_product(&ex.g_pos, &d),
        Err(Error::VocabularyMismatch(_))
    ));
}
