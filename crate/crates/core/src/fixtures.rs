//! Named semigroups used throughout the tests, the acceptance suite and the
//! CLI's `fixture` command. Permutation groups are generated by composing
//! permutations; no table is typed in by hand.

use crate::group::FiniteGroup;
use crate::rees::{ReesSpec, DEFAULT_SIZE_CAP};
use crate::semigroup::{Elem, FiniteSemigroup};

/// The non-identity sandwich entry of RS240: a fixed 5-cycle.
pub const RS240_G: &str = "(12345)";

/// Every name accepted by [`by_name`].
pub const NAMES: &[&str] =
    &["triv", "lz2", "rz2", "n3", "c2", "c3", "c6", "s3", "s4", "a4", "a5", "d4", "q8", "rs240", "rsing", "a5plus"];

fn letters(n: usize) -> Vec<String> {
    (0..n).map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("a{i}") }).collect()
}

pub fn trivial() -> FiniteSemigroup {
    FiniteSemigroup::from_indices(vec!["e".into()], vec![vec![0]]).unwrap()
}

/// `x·y = x`.
pub fn left_zero(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(letters(n), |a, _| a).unwrap()
}

/// `x·y = y`.
pub fn right_zero(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(letters(n), |_, b| b).unwrap()
}

/// `{0, a, b, ...}` with every product equal to `0`.
pub fn null(n: usize) -> FiniteSemigroup {
    let mut names = vec!["0".to_string()];
    names.extend(letters(n - 1));
    FiniteSemigroup::from_fn(names, |_, _| 0).unwrap()
}

/// `C_n = {1, c, c2, ...}`.
pub fn cyclic(n: usize) -> FiniteSemigroup {
    let names = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "c".to_string(),
            _ => format!("c{k}"),
        })
        .collect();
    FiniteSemigroup::from_fn(names, |a, b| (a + b) % n).unwrap()
}

/// Cycle notation on points `1..=n`, identity written `1`.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = perm[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

/// The group on a set of permutations, closed under composition. Products
/// are `(a·b)(x) = b(a(x))`: apply `a` first.
fn permutation_group(mut perms: Vec<Vec<usize>>) -> FiniteSemigroup {
    assert!(perms.first().map_or(0, Vec::len) <= 9, "cycle names assume single-digit points");
    perms.sort();
    perms.dedup();
    let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteSemigroup::from_fn(names, |a, b| {
        let composed: Vec<usize> = perms[a].iter().map(|&x| perms[b][x]).collect();
        index(&composed)
    })
    .unwrap()
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                extend(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(perm: &[usize]) -> bool {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    inversions % 2 == 0
}

pub fn symmetric(n: usize) -> FiniteSemigroup {
    permutation_group(all_permutations(n))
}

pub fn alternating(n: usize) -> FiniteSemigroup {
    permutation_group(all_permutations(n).into_iter().filter(|p| is_even(p)).collect())
}

/// Symmetries of the regular `n`-gon, order `2n`.
pub fn dihedral(n: usize) -> FiniteSemigroup {
    let mut perms = Vec::new();
    for k in 0..n {
        perms.push((0..n).map(|x| (x + k) % n).collect());
        perms.push((0..n).map(|x| (n + k - x) % n).collect());
    }
    permutation_group(perms)
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> FiniteSemigroup {
    // Element 2u + s is (-1)^s · unit[u] with units 1, i, j, k.
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    FiniteSemigroup::from_fn(names, |a, b| {
        let (unit, neg) = UNIT[a / 2][b / 2];
        let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
        2 * unit + sign as usize
    })
    .unwrap()
}

fn group(s: FiniteSemigroup) -> FiniteGroup {
    FiniteGroup::from_semigroup(s).expect("fixture is a group")
}

/// `(A5, P = [[1, 1], [1, g]], {1,2}, {1,2})` with `g` the 5-cycle (12345).
pub fn rs240_spec() -> ReesSpec {
    let a5 = group(alternating(5));
    let one = a5.identity();
    let g = a5.index_of(RS240_G).expect("A5 contains the 5-cycle");
    ReesSpec::new(a5, 2, 2, vec![vec![one, one], vec![one, g]]).unwrap()
}

pub fn rs240() -> FiniteSemigroup {
    rs240_spec().build_cayley(DEFAULT_SIZE_CAP).unwrap()
}

/// Rees semigroup over C2 with the all-identity 2×2 sandwich matrix.
pub fn rsing_spec() -> ReesSpec {
    let c2 = group(cyclic(2));
    let one = c2.identity();
    ReesSpec::new(c2, 2, 2, vec![vec![one, one], vec![one, one]]).unwrap()
}

pub fn rsing() -> FiniteSemigroup {
    rsing_spec().build_cayley(DEFAULT_SIZE_CAP).unwrap()
}

/// A5 with a new identity `u` adjoined (index 60).
pub fn a5_plus() -> FiniteSemigroup {
    alternating(5).with_new_identity("u").unwrap()
}

pub fn by_name(name: &str) -> Option<FiniteSemigroup> {
    Some(match name.to_ascii_lowercase().as_str() {
        "triv" => trivial(),
        "lz2" => left_zero(2),
        "rz2" => right_zero(2),
        "n3" => null(3),
        "c2" => cyclic(2),
        "c3" => cyclic(3),
        "c6" => cyclic(6),
        "s3" => symmetric(3),
        "s4" => symmetric(4),
        "a4" => alternating(4),
        "a5" => alternating(5),
        "d4" => dihedral(4),
        "q8" => quaternion(),
        "rs240" => rs240(),
        "rsing" => rsing(),
        "a5plus" => a5_plus(),
        _ => return None,
    })
}

/// Parametrized families: `cyclic`, `symmetric`, `alternating`, `dihedral`,
/// `null`, `left-zero`, `right-zero`.
pub fn family(name: &str, param: usize) -> Option<FiniteSemigroup> {
    let ok = match name {
        "symmetric" | "alternating" => (1..=7).contains(&param),
        "dihedral" => (3..=9).contains(&param),
        "cyclic" | "null" | "left-zero" | "right-zero" => (1..=4096).contains(&param),
        _ => false,
    };
    if !ok {
        return None;
    }
    Some(match name {
        "cyclic" => cyclic(param),
        "symmetric" => symmetric(param),
        "alternating" => alternating(param),
        "dihedral" => dihedral(param),
        "null" => null(param),
        "left-zero" => left_zero(param),
        _ => right_zero(param),
    })
}

/// All named fixtures, for sweeps over "every fixture".
pub fn small_named() -> Vec<(&'static str, FiniteSemigroup)> {
    NAMES.iter().map(|&n| (n, by_name(n).unwrap())).collect()
}

/// Looks up a permutation-group element by cycle notation.
pub fn elem(s: &FiniteSemigroup, name: &str) -> Elem {
    s.index_of(name).unwrap_or_else(|| panic!("no element `{name}`"))
}
