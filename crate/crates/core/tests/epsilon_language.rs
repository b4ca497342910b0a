//! Epsilon elimination preserves the accepted language of action strings.

use ggsys::compiler::{eliminate_epsilon, EpsilonFree};
use ggsys::prng::PrngState;
use ggsys::rbg::{build_nfa, parse_pattern, Action, Label, Nfa};

const ATOMS: [&str; 4] = ["up", "down", "{e}", "[x]"];

fn random_pattern(rng: &mut PrngState, size: usize) -> String {
    if size <= 1 {
        return ATOMS[rng.uniform_index(ATOMS.len())].to_string();
    }
    match rng.uniform_index(3) {
        0 => format!("({})*", random_pattern(rng, size - 1)),
        k => {
            let left = 1 + rng.uniform_index(size - 1);
            let (a, b) = (random_pattern(rng, left), random_pattern(rng, size - left));
            if k == 1 {
                format!("({a} + {b})")
            } else {
                format!("({a} {b})")
            }
        }
    }
}

/// Accepts by subset simulation with epsilon closures.
fn accepts_original(nfa: &Nfa<Action>, word: &[Action]) -> bool {
    let n = nfa.node_count as usize;
    let close = |set: Vec<bool>| {
        let mut set = set;
        let mut stack: Vec<usize> = (0..n).filter(|&i| set[i]).collect();
        while let Some(u) = stack.pop() {
            for &ei in &nfa.out[u] {
                let e = &nfa.edges[ei as usize];
                if matches!(e.label, Label::Epsilon) && !set[e.to as usize] {
                    set[e.to as usize] = true;
                    stack.push(e.to as usize);
                }
            }
        }
        set
    };
    let mut cur = vec![false; n];
    cur[nfa.start as usize] = true;
    cur = close(cur);
    for a in word {
        let mut next = vec![false; n];
        for e in &nfa.edges {
            if cur[e.from as usize] && e.label == Label::Action(a.clone()) {
                next[e.to as usize] = true;
            }
        }
        cur = close(next);
    }
    cur[nfa.accept as usize]
}

fn accepts_free(f: &EpsilonFree<Action>, word: &[Action]) -> bool {
    let n = f.nfa.node_count as usize;
    let mut cur = vec![false; n];
    cur[f.nfa.start as usize] = true;
    for a in word {
        let mut next = vec![false; n];
        for e in &f.nfa.edges {
            assert!(!matches!(e.label, Label::Epsilon));
            if cur[e.from as usize] && e.label == Label::Action(a.clone()) {
                next[e.to as usize] = true;
            }
        }
        cur = next;
    }
    (0..n).any(|i| cur[i] && f.accepting[i])
}

/// A word read off a random walk through the original automaton; often
/// accepted, sometimes cut short.
fn walk_word(nfa: &Nfa<Action>, rng: &mut PrngState) -> Vec<Action> {
    let mut word = Vec::new();
    let mut u = nfa.start;
    for _ in 0..40 {
        if u == nfa.accept || nfa.out[u as usize].is_empty() {
            break;
        }
        let out = &nfa.out[u as usize];
        let e = &nfa.edges[out[rng.uniform_index(out.len())] as usize];
        if let Label::Action(a) = &e.label {
            word.push(a.clone());
        }
        u = e.to;
    }
    word
}

#[test]
fn random_words_agree() {
    let alphabet: Vec<Action> = ATOMS
        .iter()
        .map(|a| {
            build_nfa(&parse_pattern(a).unwrap())
                .edges
                .iter()
                .find_map(|e| match &e.label {
                    Label::Action(x) => Some(x.clone()),
                    _ => None,
                })
                .unwrap()
        })
        .collect();
    let mut rng = PrngState::new(99);
    let (mut words, mut accepted) = (0, 0);
    for _ in 0..100 {
        let size = 1 + rng.uniform_index(8);
        let text = random_pattern(&mut rng, size);
        let nfa = build_nfa(&parse_pattern(&text).unwrap());
        let free = eliminate_epsilon(&nfa);
        assert!(free.nfa.node_count <= nfa.node_count);
        for i in 0..20 {
            let word = if i % 2 == 0 {
                walk_word(&nfa, &mut rng)
            } else {
                (0..rng.uniform_index(7))
                    .map(|_| alphabet[rng.uniform_index(4)].clone())
                    .collect()
            };
            let want = accepts_original(&nfa, &word);
            assert_eq!(accepts_free(&free, &word), want, "{text} on {word:?}");
            words += 1;
            accepted += want as usize;
        }
    }
    assert_eq!(words, 2000);
    // both outcomes are exercised
    assert!(accepted > 200 && accepted < 1800, "{accepted}");
}
