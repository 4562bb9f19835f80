use choosability::gadgets::gen_theta;
use choosability::graph::families::{complete_multipartite, cycle, grid};
use choosability::kernel::choose_via_orientation;
use choosability::oracle::{ch_k, is_ab_choosable, Budget, ChoosabilityQuery};
use choosability::orientation::orient_bounded_outdegree;
use choosability::two_choice::{choose_42, is_2_choosable};
use choosability::{verify_choice, Graph, ListAssignment};

fn budget() -> Budget {
    Budget::new(u64::MAX)
}

#[test]
fn graph_json_round_trip_feeds_the_oracle() {
    let g = Graph::from_json(r#"{"vertices":[0,1,2,3],"edges":[[0,1],[1,2],[2,3],[0,3]]}"#).unwrap();
    assert_eq!(g, cycle(4));
    let (ok, _) = is_ab_choosable(&g, ChoosabilityQuery::new(2, 1).unwrap(), &budget()).unwrap();
    assert!(ok);
}

#[test]
fn grid_chosen_along_a_bounded_orientation() {
    let g = grid(4, 4);
    let o = orient_bounded_outdegree(&g, 2).unwrap();
    let s = ListAssignment::from_lists(g.vertices().map(|v| (v, (v % 5..v % 5 + 6).collect::<Vec<_>>())));
    let c = choose_via_orientation(&g, &o, 2, &s).unwrap();
    assert!(verify_choice(&g, &s, &c, 2));
}

#[test]
fn two_choosable_family_and_choice_numbers() {
    let theta = gen_theta(2, 2, 4).unwrap();
    assert!(is_2_choosable(&theta));
    let s = ListAssignment::uniform(&theta, 0..4);
    assert!(verify_choice(&theta, &s, &choose_42(&theta, &s).unwrap(), 2));
    assert!(!is_2_choosable(&complete_multipartite(&[3, 3])));
    assert_eq!(ch_k(&complete_multipartite(&[3, 3]), 1, &budget()).unwrap(), 3);
}
