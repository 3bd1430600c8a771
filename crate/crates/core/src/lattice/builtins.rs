use super::{FiniteOrthoLattice, RawLattice};

/// The two-element Boolean algebra `{0, 1}`.
pub fn two() -> FiniteOrthoLattice {
    FiniteOrthoLattice::from_pairs(&["0", "1"], &[1, 0], &[(0, 1)]).expect("2 is an ortholattice")
}

/// The Boolean algebra of subsets of an `n`-element set, elements named by
/// bit strings (`n` between 1 and 8).
pub fn boolean(n: u32) -> FiniteOrthoLattice {
    assert!((1..=8).contains(&n), "boolean(n) supports 1 <= n <= 8");
    let size = 1usize << n;
    let mask = size - 1;
    let names = (0..size).map(|i| format!("{:0width$b}", i, width = n as usize)).collect();
    let le = (0..size).map(|a| (0..size).map(|b| a & b == a).collect()).collect();
    let comp = (0..size).map(|a| a ^ mask).collect();
    FiniteOrthoLattice::new(RawLattice { names, le, comp }).expect("2^n is an ortholattice")
}

/// The hexagon `0 < x < y < 1`, `0 < y' < x' < 1`.
pub fn o6() -> FiniteOrthoLattice {
    FiniteOrthoLattice::from_pairs(
        &["0", "x", "y", "y'", "x'", "1"],
        &[5, 4, 3, 2, 1, 0],
        &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)],
    )
    .expect("O6 is an ortholattice")
}

/// The six-element orthomodular lattice with two complementary atom pairs.
pub fn mo2() -> FiniteOrthoLattice {
    FiniteOrthoLattice::from_pairs(
        &["0", "a", "a'", "b", "b'", "1"],
        &[5, 2, 1, 4, 3, 0],
        &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 5), (3, 5), (4, 5)],
    )
    .expect("MO2 is an ortholattice")
}

/// Direct product with componentwise order and complement; elements are
/// named `(a,b)`.
pub fn product(l1: &FiniteOrthoLattice, l2: &FiniteOrthoLattice) -> FiniteOrthoLattice {
    let (n1, n2) = (l1.size(), l2.size());
    let pairs: Vec<_> = l1.elements().flat_map(|a| l2.elements().map(move |b| (a, b))).collect();
    let names = pairs.iter().map(|&(a, b)| format!("({},{})", l1.name(a), l2.name(b))).collect();
    let le = pairs.iter().map(|&(a, b)| pairs.iter().map(|&(c, d)| l1.le(a, c) && l2.le(b, d)).collect()).collect();
    let comp = pairs.iter().map(|&(a, b)| l1.comp(a).index() * n2 + l2.comp(b).index()).collect();
    debug_assert_eq!(pairs.len(), n1 * n2);
    FiniteOrthoLattice::new(RawLattice { names, le, comp }).expect("a product of ortholattices is an ortholattice")
}

/// Looks up a builtin by name, case-insensitively: `two` (or `2`), `O6`,
/// `MO2`, `boolean-N`. Names joined by `*` denote the product.
pub fn builtin(name: &str) -> Option<FiniteOrthoLattice> {
    if let Some((left, right)) = name.split_once('*') {
        return Some(product(&builtin(left)?, &builtin(right)?));
    }
    let lower = name.trim().to_ascii_lowercase();
    match lower.as_str() {
        "two" | "2" => Some(two()),
        "o6" | "hexagon" => Some(o6()),
        "mo2" => Some(mo2()),
        _ => {
            let n: u32 = lower.strip_prefix("boolean-")?.parse().ok()?;
            (1..=8).contains(&n).then(|| boolean(n))
        }
    }
}

/// Names accepted by [`builtin`], for help texts.
pub const BUILTIN_NAMES: &str = "two, O6, MO2, boolean-N (1<=N<=8), or A*B for a product";
