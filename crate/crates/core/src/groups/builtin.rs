use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::table::{CharacterSource, GroupTable};
use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

/// Built-in groups are capped at this order.
pub const MAX_BUILTIN_ORDER: usize = 24;

/// Selector for [`build_group`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Symmetric(usize),
    /// Dihedral group of order `2k`.
    Dihedral(usize),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    File(PathBuf),
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// `trivial`, `C<k>`, `S<k>`, `D<k>`, and `x`-separated products such as `C2xC2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let factors: Vec<&str> = s.split(['x', '×']).map(str::trim).collect();
        let mut specs = factors.iter().map(|f| parse_factor(f, s));
        let first = specs.next().unwrap()?;
        specs.try_fold(first, |acc, next| Ok(GroupSpec::DirectProduct(Box::new(acc), Box::new(next?))))
    }
}

fn parse_factor(f: &str, whole: &str) -> Result<GroupSpec> {
    if f.eq_ignore_ascii_case("trivial") || f == "1" {
        return Ok(GroupSpec::Trivial);
    }
    let mut chars = f.chars();
    let family = chars.next();
    let k: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::Parse(format!("group {whole:?}: cannot read factor {f:?}")))?;
    match family {
        Some('C' | 'c' | 'Z') => Ok(GroupSpec::Cyclic(k)),
        Some('S' | 's') => Ok(GroupSpec::Symmetric(k)),
        Some('D' | 'd') => Ok(GroupSpec::Dihedral(k)),
        _ => Err(Error::Parse(format!("group {whole:?}: unknown family in {f:?}"))),
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => f.write_str("trivial"),
            GroupSpec::Cyclic(k) => write!(f, "C{k}"),
            GroupSpec::Symmetric(k) => write!(f, "S{k}"),
            GroupSpec::Dihedral(k) => write!(f, "D{k}"),
            GroupSpec::DirectProduct(a, b) => write!(f, "{a}x{b}"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl GroupSpec {
    fn builtin_order(&self) -> Option<usize> {
        match self {
            GroupSpec::Trivial => Some(1),
            GroupSpec::Cyclic(k) => Some(*k),
            GroupSpec::Symmetric(k) => (1..=*k).try_fold(1usize, |a, b| a.checked_mul(b)),
            GroupSpec::Dihedral(k) => k.checked_mul(2),
            GroupSpec::DirectProduct(a, b) => a.builtin_order()?.checked_mul(b.builtin_order()?),
            GroupSpec::File(_) => None,
        }
    }
}

/// Build and validate a group table.
pub fn build_group(spec: &GroupSpec) -> Result<GroupTable> {
    if let GroupSpec::File(path) = spec {
        return super::file::load_group_file(path);
    }
    let unsupported = || Error::UnsupportedGroup(spec.to_string());
    match spec.builtin_order() {
        Some(o) if o <= MAX_BUILTIN_ORDER => {}
        _ => return Err(unsupported()),
    }
    match spec {
        GroupSpec::Trivial => cyclic(1),
        GroupSpec::Cyclic(k) if *k >= 1 => cyclic(*k),
        GroupSpec::Symmetric(k) if (1..=4).contains(k) => symmetric(*k),
        GroupSpec::Dihedral(k) if *k >= 1 => dihedral(*k),
        GroupSpec::DirectProduct(a, b) => Ok(direct_product(&build_group(a)?, &build_group(b)?)?),
        _ => Err(unsupported()),
    }
}

fn cyclic(k: usize) -> Result<GroupTable> {
    let mult = (0..k * k).map(|i| (i / k + i % k) % k).collect();
    let name = if k == 1 { "trivial".to_string() } else { format!("C{k}") };
    let labels = (0..k)
        .map(|a| match a {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{a}"),
        })
        .collect();
    let mut g = GroupTable::from_table(name, k, mult)?.with_labels(labels);
    let chars = (0..k)
        .map(|j| {
            (0..k)
                .map(|a| Cyclotomic::root_of_unity(k as u32, (j * a) as i64).unwrap())
                .collect()
        })
        .collect();
    g.characters = Some(CharacterSource::PerElement(chars));
    g.generators = Some(if k >= 2 { vec![1] } else { vec![] });
    Ok(g)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = p[x];
        }
        out.push_str(&format!("({})", cyc.join(",")));
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

/// Irreducible characters of S_k (k <= 4) by cycle type. Irreps are listed
/// trivial, sign, then the higher-dimensional ones.
fn symmetric_character(k: usize, nu: usize, cycle_type: &[usize]) -> i64 {
    const S3_TYPES: [&[usize]; 3] = [&[1, 1, 1], &[2, 1], &[3]];
    const S3: [[i64; 3]; 3] = [[1, 1, 1], [1, -1, 1], [2, 0, -1]];
    const S4_TYPES: [&[usize]; 5] = [&[1, 1, 1, 1], &[2, 1, 1], &[2, 2], &[3, 1], &[4]];
    const S4: [[i64; 5]; 5] = [
        [1, 1, 1, 1, 1],
        [1, -1, 1, 1, -1],
        [3, 1, -1, 0, -1],
        [3, -1, -1, 0, 1],
        [2, 0, 2, -1, 0],
    ];
    let sign = if cycle_type.iter().filter(|&&l| l % 2 == 0).count() % 2 == 0 { 1 } else { -1 };
    match k {
        1 => 1,
        2 => [1, sign][nu],
        3 => S3[nu][S3_TYPES.iter().position(|t| *t == cycle_type).unwrap()],
        4 => S4[nu][S4_TYPES.iter().position(|t| *t == cycle_type).unwrap()],
        _ => unreachable!(),
    }
}

fn symmetric(k: usize) -> Result<GroupTable> {
    let perms = permutations(k);
    let order = perms.len();
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let mut mult = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            let ab: Vec<usize> = (0..k).map(|i| a[b[i]]).collect();
            mult.push(index(&ab));
        }
    }
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    let mut g = GroupTable::from_table(format!("S{k}"), order, mult)?.with_labels(labels);
    let n_irreps = [1, 1, 2, 3, 5][k];
    let chars = (0..n_irreps)
        .map(|nu| {
            perms
                .iter()
                .map(|p| Cyclotomic::from_int(symmetric_character(k, nu, &cycle_type(p))))
                .collect()
        })
        .collect();
    g.characters = Some(CharacterSource::PerElement(chars));
    if k <= 2 {
        g.generators = Some(if k == 2 { vec![1] } else { vec![] });
    }
    Ok(g)
}

/// Elements `r^a s^b` stored at index `a + k*b`.
fn dihedral(k: usize) -> Result<GroupTable> {
    let order = 2 * k;
    let mut mult = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x % k, x / k);
        for y in 0..order {
            let (c, d) = (y % k, y / k);
            let rot = if b == 0 { (a + c) % k } else { (a + k - c) % k };
            mult.push(rot + k * (b ^ d));
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (a, b) = (x % k, x / k);
            let r = match a {
                0 => String::new(),
                1 => "r".into(),
                _ => format!("r^{a}"),
            };
            match (r.is_empty(), b) {
                (true, 0) => "1".into(),
                (true, _) => "s".into(),
                (false, 0) => r,
                (false, _) => format!("{r}s"),
            }
        })
        .collect();
    let mut g = GroupTable::from_table(format!("D{k}"), order, mult)?.with_labels(labels);

    let zeta = |e: i64| Cyclotomic::root_of_unity(k as u32, e).unwrap();
    let sign = |e: usize| Cyclotomic::from_int(if e.is_multiple_of(2) { 1 } else { -1 });
    let mut chars: Vec<Vec<Cyclotomic>> = Vec::new();
    chars.push(vec![Cyclotomic::one(); order]);
    chars.push((0..order).map(|x| sign(x / k)).collect());
    if k.is_multiple_of(2) {
        chars.push((0..order).map(|x| sign(x % k)).collect());
        chars.push((0..order).map(|x| sign(x % k + x / k)).collect());
    }
    for j in 1..=(k - 1) / 2 {
        chars.push(
            (0..order)
                .map(|x| {
                    let (a, b) = (x % k, x / k);
                    if b == 1 {
                        Cyclotomic::zero()
                    } else {
                        let e = (j * a) as i64;
                        &zeta(e) + &zeta(-e)
                    }
                })
                .collect(),
        );
    }
    g.characters = Some(CharacterSource::PerElement(chars));
    Ok(g)
}

/// `(g, h)` stored at index `g * |H| + h`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let (na, nb) = (a.order(), b.order());
    let order = na * nb;
    let mut mult = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            mult.push(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
        }
    }
    let labels = (0..order)
        .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
        .collect();
    let mut g = GroupTable::from_table(format!("{}x{}", a.name(), b.name()), order, mult)?
        .with_labels(labels);
    if let (Some(CharacterSource::PerElement(ca)), Some(CharacterSource::PerElement(cb))) =
        (a.characters(), b.characters())
    {
        let mut chars = Vec::new();
        for chi in ca {
            for psi in cb {
                chars.push((0..order).map(|x| &chi[x / nb] * &psi[x % nb]).collect());
            }
        }
        g.characters = Some(CharacterSource::PerElement(chars));
    }
    if let (Some(ga), Some(gb)) = (&a.generators, &b.generators) {
        let mut gens: Vec<usize> = ga.iter().map(|&x| x * nb + b.identity()).collect();
        gens.extend(gb.iter().map(|&y| a.identity() * nb + y));
        g.generators = Some(gens);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> Result<GroupTable> {
        build_group(&s.parse()?)
    }

    #[test]
    fn parses_specs() {
        assert_eq!("C3".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(3));
        assert_eq!("trivial".parse::<GroupSpec>().unwrap(), GroupSpec::Trivial);
        assert_eq!(
            "C2xC2".parse::<GroupSpec>().unwrap(),
            GroupSpec::DirectProduct(Box::new(GroupSpec::Cyclic(2)), Box::new(GroupSpec::Cyclic(2)))
        );
        assert!(matches!("Q8".parse::<GroupSpec>(), Err(Error::Parse(_))));
        assert!(matches!("Cx".parse::<GroupSpec>(), Err(Error::Parse(_))));
        assert_eq!("C2xS3".parse::<GroupSpec>().unwrap().to_string(), "C2xS3");
    }

    #[test]
    fn builtin_examples() {
        let c3 = build("C3").unwrap();
        assert_eq!(c3.order(), 3);
        assert!(c3.is_abelian());

        let s3 = build("S3").unwrap();
        assert_eq!(s3.order(), 6);
        let labels: Vec<_> = (0..6).map(|i| s3.label(i)).collect();
        assert_eq!(labels, ["1", "(2,3)", "(1,2)", "(1,2,3)", "(1,3,2)", "(1,3)"]);
        assert!(!s3.is_abelian());

        let v4 = build("C2xC2").unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);
        assert_eq!(v4.default_generators(), vec![2, 1]);

        let d4 = build("D4").unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(build("S4").unwrap().order(), 24);
        assert_eq!(build("trivial").unwrap().order(), 1);
    }

    #[test]
    fn unsupported_builtins() {
        assert!(matches!(build("S5"), Err(Error::UnsupportedGroup(_))));
        assert!(matches!(build("C25"), Err(Error::UnsupportedGroup(_))));
        assert!(matches!(build("C0"), Err(Error::UnsupportedGroup(_))));
        assert!(matches!(build("S4xC2"), Err(Error::UnsupportedGroup(_))));
        assert!(matches!(build("D13"), Err(Error::UnsupportedGroup(_))));
    }
}
