//! Join decompositions of word supports in right-angled Artin groups.

use cubsc_core::families::SimpleGraph;

/// Generator indices occurring in `w`, letters `a, b, ...` with inverses in
/// upper case.
pub fn support(w: &str) -> Vec<usize> {
    let mut s: Vec<usize> = w
        .chars()
        .filter(|c| c.is_ascii_alphabetic())
        .map(|c| (c.to_ascii_lowercase() as u8 - b'a') as usize)
        .collect();
    s.sort_unstable();
    s.dedup();
    s
}

/// True when the support of `w` admits no splitting into nonempty parts
/// with every cross pair adjacent in `g`, that is when the complement of
/// `g` restricted to the support is connected. A single generator lies in
/// its own star and counts as a join.
pub fn join_support_check(g: &SimpleGraph, w: &str) -> bool {
    let s = support(w);
    if s.len() < 2 {
        return false;
    }
    let mut seen = vec![false; s.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..s.len() {
            if !seen[j] && !g.adjacent(s[i], s[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&b| b)
}
