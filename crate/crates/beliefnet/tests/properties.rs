//! Randomized cross-checks of the library's laws over sampled networks,
//! profiles, and groups. Everything here goes through the public API
//! only, and the reference computations deliberately take a different
//! route than the implementation (explicit neighbor lists instead of bit
//! tallies, group sweeps instead of divergence subsets).

use std::collections::BTreeSet;

use beliefnet::{
    apply_all, apply_group, build_transition_graph, check_all, construct_converging_sequence,
    enumerate_equilibria, equilibrium_subset_equivalence, fixtures, is_equilibrium,
    majority_rule, run_random, run_scheduled, run_synchronous, verify_trace, AgentGroup,
    BeliefProfile, EvolutionFunction, FunctionFamily, Limits, Network, Outcome, PhaseOrder,
    RandomActivation, Schedule,
};
use proptest::prelude::*;

/// Network on 1..=max_n agents with uniformly chosen optional ties.
fn arb_network(max_n: usize) -> impl Strategy<Value = Network> {
    (1..=max_n).prop_flat_map(|n| {
        let pair_bits = (n * (n - 1)) as u32;
        (Just(n), 0..(1u64 << pair_bits))
            .prop_map(|(n, mask)| fixtures::network_from_mask(n, mask))
    })
}

/// Network plus one or two profile masks over it.
fn arb_net_and_masks(max_n: usize) -> impl Strategy<Value = (Network, u64, u64)> {
    (1..=max_n).prop_flat_map(|n| {
        let pair_bits = (n * (n - 1)) as u32;
        (Just(n), 0..(1u64 << pair_bits), 0..(1u64 << n), 0..(1u64 << n)).prop_map(
            |(n, net_mask, p, q)| (fixtures::network_from_mask(n, net_mask), p, q),
        )
    })
}

fn group_from_mask(net: &Network, mask: u64) -> AgentGroup {
    let ids = net
        .agents()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, id)| id.as_str());
    net.group_from_ids(ids).unwrap()
}

/// Majority recomputed from the explicit neighbor list.
fn neighbor_list_majority(net: &Network, p: &BeliefProfile) -> BeliefProfile {
    net.profile_from_fn(|a| {
        let neighbors = net.out_neighbors(a).unwrap();
        let pos = neighbors.iter().filter(|b| p.get(b).unwrap()).count();
        let neg = neighbors.len() - pos;
        match pos.cmp(&neg) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => p.get(a).unwrap(),
        }
    })
}

fn majority(net: &Network) -> FunctionFamily {
    FunctionFamily::homogeneous(net, EvolutionFunction::Majority)
}

proptest! {
    #[test]
    fn flips_invert_and_reverse_the_order((net, pm, qm) in arb_net_and_masks(6)) {
        let p = net.profile_from_mask(pm);
        let q = net.profile_from_mask(qm);
        prop_assert_eq!(p.flip().flip(), p.clone());
        let lo = net.profile_from_mask(pm & qm);
        let hi = net.profile_from_mask(pm | qm);
        prop_assert!(lo.leq(&hi).unwrap());
        prop_assert!(hi.flip().leq(&lo.flip()).unwrap());
        prop_assert_eq!(p.leq(&q).unwrap(), q.flip().leq(&p.flip()).unwrap());
    }

    #[test]
    fn majority_matches_the_neighbor_list_recomputation((net, pm, _) in arb_net_and_masks(6)) {
        let p = net.profile_from_mask(pm);
        let fam = majority(&net);
        let updated = apply_all(&net, &fam, &p).unwrap();
        prop_assert_eq!(updated.clone(), neighbor_list_majority(&net, &p));
        for a in net.agents() {
            prop_assert_eq!(majority_rule(&net, &p, a).unwrap(), updated.get(a).unwrap());
        }
    }

    #[test]
    fn majority_is_neutral_and_monotone_everywhere((net, pm, qm) in arb_net_and_masks(6)) {
        let fam = majority(&net);
        let p = net.profile_from_mask(pm);
        let flipped = apply_all(&net, &fam, &p.flip()).unwrap();
        prop_assert_eq!(flipped, apply_all(&net, &fam, &p).unwrap().flip());
        let lo = net.profile_from_mask(pm & qm);
        let hi = net.profile_from_mask(pm | qm);
        let lo_next = apply_all(&net, &fam, &lo).unwrap();
        let hi_next = apply_all(&net, &fam, &hi).unwrap();
        prop_assert!(lo_next.leq(&hi_next).unwrap());
    }

    #[test]
    fn updating_the_full_group_is_the_simultaneous_update((net, pm, _) in arb_net_and_masks(6)) {
        let p = net.profile_from_mask(pm);
        for f in [
            EvolutionFunction::Majority,
            EvolutionFunction::Flipper,
            EvolutionFunction::Threshold(2),
        ] {
            let fam = FunctionFamily::homogeneous(&net, f);
            prop_assert_eq!(
                apply_group(&net, &fam, &p, &net.full_group()).unwrap(),
                apply_all(&net, &fam, &p).unwrap()
            );
            prop_assert_eq!(
                apply_group(&net, &fam, &p, &net.empty_group()).unwrap(),
                p.clone()
            );
        }
    }

    #[test]
    fn fixedness_under_groups_is_fixedness_outright((net, pm, _) in arb_net_and_masks(6)) {
        let p = net.profile_from_mask(pm);
        for f in [EvolutionFunction::Majority, EvolutionFunction::Flipper] {
            let fam = FunctionFamily::homogeneous(&net, f);
            prop_assert!(equilibrium_subset_equivalence(&net, &fam, &p, &Limits::default()).unwrap());
        }
    }

    #[test]
    fn consensus_is_immovable_under_majority(net in arb_network(6)) {
        let fam = majority(&net);
        for belief in [false, true] {
            prop_assert!(is_equilibrium(&net, &fam, &net.profile_all(belief)).unwrap());
        }
    }

    #[test]
    fn one_step_group_updates_match_the_graph_successors((net, pm, _) in arb_net_and_masks(5)) {
        let fam = majority(&net);
        let p = net.profile_from_mask(pm);
        let n = net.agent_count();
        let mut by_groups = BTreeSet::new();
        for gm in 0..1u64 << n {
            let group = group_from_mask(&net, gm);
            by_groups.insert(apply_group(&net, &fam, &p, &group).unwrap().to_bitstring());
        }
        let graph = build_transition_graph(&net, &fam, &Limits::default()).unwrap();
        let by_graph: BTreeSet<String> = graph
            .successors(pm)
            .map(|(to, _)| graph.profile_of(to).to_bitstring())
            .collect();
        prop_assert_eq!(by_groups, by_graph);
    }

    #[test]
    fn runs_replay_cleanly_and_deterministically((net, pm, sm) in arb_net_and_masks(6)) {
        let fam = majority(&net);
        let p = net.profile_from_mask(pm);

        let sync = run_synchronous(&net, &fam, &p, 200).unwrap();
        verify_trace(&net, &fam, &sync).unwrap();

        let schedule = Schedule::new(vec![
            group_from_mask(&net, sm),
            net.full_group(),
            group_from_mask(&net, !sm),
        ]);
        let sched = run_scheduled(&net, &fam, &p, &schedule).unwrap();
        verify_trace(&net, &fam, &sched).unwrap();

        let act = RandomActivation::uniform(&net, 0.5).unwrap();
        let first = run_random(&net, &fam, &p, &act, sm, 200).unwrap();
        let second = run_random(&net, &fam, &p, &act, sm, 200).unwrap();
        prop_assert_eq!(&first, &second);
        verify_trace(&net, &fam, &first).unwrap();
    }

    #[test]
    fn synchronous_runs_always_settle_or_cycle_within_the_space((net, pm, _) in arb_net_and_masks(6)) {
        // A budget one past the profile count forces a revisit, so the
        // run can only end by converging or closing a cycle. Periods
        // beyond two are real here: one-way ties can rotate a pattern
        // around the network.
        let fam = majority(&net);
        let p = net.profile_from_mask(pm);
        let budget = (1usize << net.agent_count()) + 1;
        let trace = run_synchronous(&net, &fam, &p, budget).unwrap();
        match trace.outcome {
            Outcome::Converged { .. } | Outcome::Cycled { .. } => {}
            Outcome::StepLimitReached => prop_assert!(false, "budget covers the space"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn failed_checks_replay_and_passed_checks_carry_nothing((net, _, _) in arb_net_and_masks(4)) {
        let limits = Limits::default();
        for f in [
            EvolutionFunction::Majority,
            EvolutionFunction::Stubborn,
            EvolutionFunction::Flipper,
            EvolutionFunction::Threshold(2),
        ] {
            let fam = FunctionFamily::homogeneous(&net, f);
            for report in check_all(&net, &fam, &limits).unwrap() {
                if report.holds {
                    prop_assert!(report.witness.is_none());
                    prop_assert_eq!(report.replay(&net, &fam), None);
                } else {
                    prop_assert!(report.witness.is_some());
                    prop_assert_eq!(report.replay(&net, &fam), Some(true));
                }
            }
        }
    }

    #[test]
    fn constructed_sequences_replay_on_sampled_networks((net, pm, _) in arb_net_and_masks(6)) {
        let fam = majority(&net);
        let p = net.profile_from_mask(pm);
        let n = net.agent_count();
        for order in [PhaseOrder::IncreasingFirst, PhaseOrder::DecreasingFirst] {
            let seq = construct_converging_sequence(&net, &fam, &p, order).unwrap();
            prop_assert!(seq.schedule.len() <= 2 * n);
            prop_assert!(seq.reached_equilibrium);
            let trace = run_scheduled(&net, &fam, &p, &seq.schedule).unwrap();
            prop_assert_eq!(trace.final_profile(), &seq.final_profile);
            let converged = matches!(trace.outcome, Outcome::Converged { .. });
            prop_assert!(converged);
        }
    }

    #[test]
    fn enumerated_equilibria_are_exactly_the_fixed_profiles(net in arb_network(5)) {
        let fam = majority(&net);
        let listed: BTreeSet<String> = enumerate_equilibria(&net, &fam, &Limits::default())
            .unwrap()
            .iter()
            .map(BeliefProfile::to_bitstring)
            .collect();
        let fixed: BTreeSet<String> = net
            .all_profiles()
            .filter(|p| is_equilibrium(&net, &fam, p).unwrap())
            .map(|p| p.to_bitstring())
            .collect();
        prop_assert_eq!(listed, fixed);
    }
}
