//! Relative James words over a finite pointed alphabet, the monoid action
//! of `A_∞` on `(X, A)_∞`, word-level James–Hopf invariants, and the
//! cup-product arithmetic of `H^*(F_n)` behind the Hopf unit certificate.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{ArithError, WordError};
use crate::plocal::{binomial, vp, PLocalRational};

/// Index of a letter in its [`PointedAlphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter(pub u16);

/// A finite pointed set `X` with a subset `A` containing the basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedAlphabet {
    names: Vec<String>,
    basepoint: Letter,
    in_a: Vec<bool>,
}

impl PointedAlphabet {
    /// `names` lists `X`; the basepoint is added to `A` if missing.
    pub fn new(names: &[&str], basepoint: &str, a: &[&str]) -> Result<Self, WordError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let find = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .map(|i| Letter(i as u16))
                .ok_or_else(|| WordError::UnknownLetter(s.to_string()))
        };
        let basepoint = find(basepoint)?;
        let mut in_a = vec![false; names.len()];
        in_a[basepoint.0 as usize] = true;
        for s in a {
            in_a[find(s)?.0 as usize] = true;
        }
        Ok(PointedAlphabet {
            names,
            basepoint,
            in_a,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn basepoint(&self) -> Letter {
        self.basepoint
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len()).map(|i| Letter(i as u16))
    }

    /// Letters other than the basepoint.
    pub fn generators(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters().filter(move |&l| l != self.basepoint)
    }

    pub fn in_a(&self, l: Letter) -> bool {
        self.in_a[l.0 as usize]
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l.0 as usize]
    }

    pub fn letter(&self, name: &str) -> Result<Letter, WordError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Letter(i as u16))
            .ok_or_else(|| WordError::UnknownLetter(name.to_string()))
    }

    /// A reduced relative word: basepoints are dropped, then every letter
    /// after the first must lie in `A`.
    pub fn word(&self, letters: &[Letter]) -> Result<RelativeWord, WordError> {
        let reduced: Vec<Letter> = letters
            .iter()
            .copied()
            .filter(|&l| l != self.basepoint)
            .collect();
        if let Some(&bad) = reduced.iter().skip(1).find(|&&l| !self.in_a(l)) {
            return Err(WordError::NotRelative(self.name(bad).to_string()));
        }
        Ok(RelativeWord(reduced))
    }

    pub fn word_from_names(&self, names: &[&str]) -> Result<RelativeWord, WordError> {
        let letters = names
            .iter()
            .map(|n| self.letter(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.word(&letters)
    }

    /// Whether every letter of `w` lies in `A`, i.e. `w ∈ A_∞`.
    pub fn is_a_word(&self, w: &RelativeWord) -> bool {
        w.0.iter().all(|&l| self.in_a(l))
    }

    /// All reduced relative words of length at most `max_len`.
    pub fn relative_words(&self, max_len: usize) -> Vec<RelativeWord> {
        let gens: Vec<Letter> = self.generators().collect();
        let tail: Vec<Letter> = gens.iter().copied().filter(|&l| self.in_a(l)).collect();
        let mut out = vec![RelativeWord::empty()];
        let mut frontier: Vec<Vec<Letter>> = gens.iter().map(|&l| vec![l]).collect();
        for _ in 1..=max_len {
            out.extend(frontier.iter().cloned().map(RelativeWord));
            frontier = frontier
                .iter()
                .flat_map(|w| {
                    tail.iter().map(move |&a| {
                        let mut next = w.clone();
                        next.push(a);
                        next
                    })
                })
                .collect();
        }
        out
    }

    /// All words of `A_∞` of length at most `max_len`.
    pub fn a_words(&self, max_len: usize) -> Vec<RelativeWord> {
        self.relative_words(max_len)
            .into_iter()
            .filter(|w| self.is_a_word(w))
            .collect()
    }

    pub fn format(&self, w: &RelativeWord) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<&str> = w.0.iter().map(|&l| self.name(l)).collect();
        parts.join(" ")
    }
}

/// A reduced word of `(X, A)_∞`; the empty word is the monoid identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RelativeWord(Vec<Letter>);

impl RelativeWord {
    pub fn empty() -> Self {
        RelativeWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }
}

/// The right action of `A_∞` on `(X, A)_∞`: `w · a`, appending the letters
/// of `a`.
pub fn act(
    alphabet: &PointedAlphabet,
    a: &RelativeWord,
    w: &RelativeWord,
) -> Result<RelativeWord, WordError> {
    if let Some(&bad) = a.0.iter().find(|&&l| !alphabet.in_a(l)) {
        return Err(WordError::ActionDomain(alphabet.name(bad).to_string()));
    }
    let mut out = w.0.clone();
    out.extend_from_slice(&a.0);
    Ok(RelativeWord(out))
}

/// The `A_∞`-equivariant extension of `g` to all of `(X, A)_∞`:
/// `g_∞(x a_1 ... a_m) = (a_1 ... a_m) · g(x)` and `g_∞(1) = *`.
///
/// Requires `g(a) = a · *` for every non-basepoint `a ∈ A`.
pub fn universal_extension<'a, T, G, Act>(
    alphabet: &'a PointedAlphabet,
    g: G,
    star: T,
    action: Act,
) -> Result<impl Fn(&RelativeWord) -> T + 'a, WordError>
where
    T: Clone + PartialEq + 'a,
    G: Fn(Letter) -> T + 'a,
    Act: Fn(&RelativeWord, &T) -> T + 'a,
{
    for a in alphabet.generators().filter(|&l| alphabet.in_a(l)) {
        let single = RelativeWord(vec![a]);
        if g(a) != action(&single, &star) {
            return Err(WordError::SideCondition {
                letter: alphabet.name(a).to_string(),
            });
        }
    }
    Ok(move |w: &RelativeWord| match w.first() {
        None => star.clone(),
        Some(x) => action(&RelativeWord(w.0[1..].to_vec()), &g(x)),
    })
}

/// The class of a word in the orbit space `(X, A)_∞ / A_∞ = X/A`: the
/// first letter if it lies outside `A`, otherwise the basepoint (`None`).
pub fn orbit_project(alphabet: &PointedAlphabet, w: &RelativeWord) -> Option<Letter> {
    w.first().filter(|&x| !alphabet.in_a(x))
}

/// A letter of the smash power `X^{(k)}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SmashLetter(pub Vec<Letter>);

/// The James–Hopf invariant `H_k` on a word of `X_∞`: the product over
/// all `k`-element index subsets (lexicographic) of the smash letters,
/// dropping any that contain the basepoint.
pub fn james_hopf(alphabet: &PointedAlphabet, w: &[Letter], k: usize) -> Vec<SmashLetter> {
    let mut out = Vec::new();
    if k == 0 || w.len() < k {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let letters: Vec<Letter> = idx.iter().map(|&i| w[i]).collect();
        if !letters.contains(&alphabet.basepoint()) {
            out.push(SmashLetter(letters));
        }
        // next subset in lexicographic order
        let mut j = k;
        while j > 0 && idx[j - 1] == w.len() - k + j - 1 {
            j -= 1;
        }
        if j == 0 {
            return out;
        }
        idx[j - 1] += 1;
        for t in j..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// A basepoint-preserving map of alphabets.
#[derive(Debug, Clone)]
pub struct PointedMap<'a> {
    pub source: &'a PointedAlphabet,
    pub target: &'a PointedAlphabet,
    images: Vec<Letter>,
}

impl<'a> PointedMap<'a> {
    pub fn new(
        source: &'a PointedAlphabet,
        target: &'a PointedAlphabet,
        images: Vec<Letter>,
    ) -> Result<Self, WordError> {
        if images.len() != source.len() {
            return Err(WordError::Parse(format!(
                "map has {} images for {} letters",
                images.len(),
                source.len()
            )));
        }
        if images[source.basepoint().0 as usize] != target.basepoint() {
            return Err(WordError::Parse(
                "map does not preserve the basepoint".into(),
            ));
        }
        Ok(PointedMap {
            source,
            target,
            images,
        })
    }

    pub fn apply(&self, l: Letter) -> Letter {
        self.images[l.0 as usize]
    }

    /// `f_∞`: letterwise image with basepoints deleted.
    pub fn apply_word(&self, w: &[Letter]) -> Vec<Letter> {
        w.iter()
            .map(|&l| self.apply(l))
            .filter(|&l| l != self.target.basepoint())
            .collect()
    }

    /// `(f^{∧k})_∞`: smash letters mapped componentwise, deleted when any
    /// component hits the basepoint.
    pub fn apply_smash_word(&self, w: &[SmashLetter]) -> Vec<SmashLetter> {
        w.iter()
            .map(|s| SmashLetter(s.0.iter().map(|&l| self.apply(l)).collect()))
            .filter(|s| !s.0.contains(&self.target.basepoint()))
            .collect()
    }
}

/// `coefficient · e_index` in `H^*(F_n)`, with `e_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnClass {
    pub index: u64,
    pub coefficient: PLocalRational,
}

impl FnClass {
    pub fn generator(p: u64, index: u64) -> Self {
        FnClass {
            index,
            coefficient: PLocalRational::one(p),
        }
    }
}

impl fmt::Display for FnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·e_{}", self.coefficient, self.index)
    }
}

/// Cup product `e_i e_j = p C(i+j, i) e_{i+j}` for `i, j >= 1`; `e_0` is
/// the unit.
pub fn cup(a: &FnClass, b: &FnClass) -> Result<FnClass, ArithError> {
    let coefficient = a.coefficient.mul(&b.coefficient);
    let index = a.index + b.index;
    if a.index == 0 || b.index == 0 {
        return Ok(FnClass { index, coefficient });
    }
    let p = coefficient.prime();
    let c = BigInt::from(binomial(index, a.index)?) * p;
    Ok(FnClass {
        index,
        coefficient: coefficient.scale_int(c),
    })
}

/// Outcome of the inductive unit computation `h^*(d_i) = u_i e_{i p^s}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitCertificate {
    pub p: u64,
    pub s: u32,
    /// `(i, v_p(u_i))`; a negative entry means `u_i` is not p-local.
    pub valuations: Vec<(u64, i64)>,
}

impl UnitCertificate {
    pub fn first_non_unit(&self) -> Option<u64> {
        self.valuations
            .iter()
            .find(|(_, v)| *v != 0)
            .map(|(i, _)| *i)
    }

    pub fn passed(&self) -> bool {
        self.first_non_unit().is_none()
    }
}

/// Runs the induction `d_1 d_{i-1} = c_i d_i` in `H^*(F_{np^s})`, pulled
/// back along `h` with `h^*(d_1) = e_{p^s}`: `u_i = (h^*(d_1) h^*(d_{i-1}))
/// / c_i`, and records `v_p(u_i)` for `1 <= i <= i_max`.
pub fn hopf_unit_certificate(p: u64, s: u32, i_max: u64) -> Result<UnitCertificate, ArithError> {
    let ps = p.pow(s);
    let d1 = FnClass::generator(p, 1);
    let h_d1 = FnClass::generator(p, ps);
    let mut h_prev = h_d1.clone();
    let mut valuations = vec![(1, 0)];
    for i in 2..=i_max {
        let relation = cup(&d1, &FnClass::generator(p, i - 1))?;
        let pulled = cup(&h_d1, &h_prev)?;
        debug_assert_eq!(pulled.index, i * ps);
        let num = pulled.coefficient.numerator() * relation.coefficient.denominator();
        let den = pulled.coefficient.denominator() * relation.coefficient.numerator();
        let v = vp(p, &num)? as i64 - vp(p, &den)? as i64;
        valuations.push((i, v));
        match PLocalRational::new(p, num, den) {
            Ok(u) => {
                h_prev = FnClass {
                    index: pulled.index,
                    coefficient: u,
                }
            }
            // u_i has a pole at p; later u_j are not defined
            Err(_) => break,
        }
    }
    Ok(UnitCertificate { p, s, valuations })
}

/// Parses `A = {a, b}; w = x a b` (optionally `X = {...};` first). The
/// basepoint is `*`; the alphabet is every letter mentioned.
pub fn parse_relative(input: &str) -> Result<(PointedAlphabet, RelativeWord), WordError> {
    let mut names: Vec<String> = vec!["*".to_string()];
    let mut a_names: Vec<String> = Vec::new();
    let mut word: Option<Vec<String>> = None;
    let add = |names: &mut Vec<String>, n: &str| {
        if !names.iter().any(|m| m == n) {
            names.push(n.to_string());
        }
    };
    for clause in input.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let (key, value) = clause
            .split_once('=')
            .ok_or_else(|| WordError::Parse(format!("expected key = value in {clause:?}")))?;
        let value = value.trim();
        let set = || -> Result<Vec<String>, WordError> {
            let inner = value
                .strip_prefix('{')
                .and_then(|v| v.strip_suffix('}'))
                .ok_or_else(|| WordError::Parse(format!("expected {{...}} in {clause:?}")))?;
            Ok(inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect())
        };
        match key.trim() {
            "X" => set()?.iter().for_each(|n| add(&mut names, n)),
            "A" => {
                for n in set()? {
                    add(&mut names, &n);
                    a_names.push(n);
                }
            }
            "w" => {
                let letters: Vec<String> = value.split_whitespace().map(String::from).collect();
                letters.iter().for_each(|n| add(&mut names, n));
                word = Some(letters);
            }
            other => return Err(WordError::Parse(format!("unknown key {other:?}"))),
        }
    }
    let word = word.ok_or_else(|| WordError::Parse("missing w = ...".into()))?;
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let a_refs: Vec<&str> = a_names.iter().map(String::as_str).collect();
    let alphabet = PointedAlphabet::new(&name_refs, "*", &a_refs)?;
    let w_refs: Vec<&str> = word.iter().map(String::as_str).collect();
    let w = alphabet.word_from_names(&w_refs)?;
    Ok((alphabet, w))
}

/// Per-length tallies of the exhaustive word identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordSuiteReport {
    /// `(length, cases, passed)` for word lengths `0..=max_len`.
    pub by_length: Vec<(usize, usize, usize)>,
    pub failures: Vec<String>,
}

impl WordSuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failing_length(&self) -> Option<usize> {
        self.by_length
            .iter()
            .find(|(_, cases, ok)| cases != ok)
            .map(|(l, _, _)| *l)
    }

    fn record(&mut self, len: usize, ok: bool, what: impl FnOnce() -> String) {
        let row = &mut self.by_length[len];
        row.1 += 1;
        if ok {
            row.2 += 1;
        } else if self.failures.len() < 20 {
            self.failures.push(what());
        }
    }
}

/// Every pointed alphabet on `{*, x, y, ...}` with at most `max_letters`
/// letters (basepoint included) and every choice of `A`.
pub fn small_alphabets(max_letters: usize) -> Vec<PointedAlphabet> {
    const NAMES: [&str; 6] = ["*", "x", "y", "z", "w", "t"];
    let mut out = Vec::new();
    for size in 1..=max_letters.min(NAMES.len()) {
        let names = &NAMES[..size];
        for mask in 0..(1u32 << (size - 1)) {
            let a: Vec<&str> = (1..size)
                .filter(|i| mask & (1 << (i - 1)) != 0)
                .map(|i| names[i])
                .collect();
            out.push(PointedAlphabet::new(names, "*", &a).expect("names are distinct"));
        }
    }
    out
}

fn concat(a: &RelativeWord, b: &RelativeWord) -> RelativeWord {
    let mut v = a.0.clone();
    v.extend_from_slice(&b.0);
    RelativeWord(v)
}

/// All sequences of non-basepoint letters of length at most `max_len`.
fn free_words(alphabet: &PointedAlphabet, max_len: usize) -> Vec<Vec<Letter>> {
    let gens: Vec<Letter> = alphabet.generators().collect();
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                gens.iter().map(move |&l| {
                    let mut n = w.clone();
                    n.push(l);
                    n
                })
            })
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

/// Checks, over all given alphabets and words up to `max_len`: closure of
/// relative words under the action, unitality and associativity, that the
/// orbit-valued equivariant extension is unique and equals
/// [`orbit_project`], invariance of the projection, the identity
/// extension, and naturality and length of [`james_hopf`].
pub fn verify_word_suite(alphabets: &[PointedAlphabet], max_len: usize) -> WordSuiteReport {
    let mut rep = WordSuiteReport {
        by_length: (0..=max_len).map(|l| (l, 0, 0)).collect(),
        failures: Vec::new(),
    };
    for al in alphabets {
        let words = al.relative_words(max_len);
        let a_words = al.a_words(max_len);

        for w in &words {
            let unit = act(al, &RelativeWord::empty(), w).as_ref() == Ok(w);
            rep.record(w.len(), unit, || format!("unit fails on {}", al.format(w)));
            for a1 in a_words.iter().filter(|a| a.len() + w.len() <= max_len) {
                let wa = act(al, a1, w);
                let closed = matches!(&wa, Ok(v) if al.word(v.letters()).as_ref() == Ok(v));
                let len = w.len() + a1.len();
                rep.record(len, closed, || {
                    format!(
                        "{} · {} is not a relative word",
                        al.format(w),
                        al.format(a1)
                    )
                });
                let invariant = wa
                    .as_ref()
                    .is_ok_and(|v| orbit_project(al, v) == orbit_project(al, w));
                rep.record(len, invariant, || {
                    format!("projection moves under {}", al.format(a1))
                });
                for a2 in a_words.iter().filter(|a| a.len() + len <= max_len) {
                    let lhs = act(al, a1, w).and_then(|v| act(al, a2, &v));
                    let rhs = act(al, &concat(a1, a2), w);
                    rep.record(len + a2.len(), lhs.is_ok() && lhs == rhs, || {
                        format!(
                            "associativity fails on {}, {}, {}",
                            al.format(w),
                            al.format(a1),
                            al.format(a2)
                        )
                    });
                }
            }
        }

        // identity target: g = inclusion of letters
        let incl = |l: Letter| al.word(&[l]).expect("single letters are relative");
        match universal_extension(al, incl, RelativeWord::empty(), |a, w| {
            act(al, a, w).expect("A-words act")
        }) {
            Ok(id) => {
                for w in &words {
                    rep.record(w.len(), &id(w) == w, || {
                        format!("identity extension moves {}", al.format(w))
                    });
                }
            }
            Err(e) => rep.record(0, false, || format!("identity extension rejected: {e}")),
        }

        // orbit target X/A with the trivial action; letters of A go to *
        let quotient = |l: Letter| Some(l).filter(|&l| !al.in_a(l));
        let trivial = |_: &RelativeWord, t: &Option<Letter>| *t;
        let ext = match universal_extension(al, quotient, None, trivial) {
            Ok(e) => e,
            Err(e) => {
                rep.record(0, false, || format!("orbit extension rejected: {e}"));
                continue;
            }
        };
        for w in &words {
            rep.record(w.len(), ext(w) == orbit_project(al, w), || {
                format!("diagram fails on {}", al.format(w))
            });
        }
        for len in 0..=max_len {
            let unique = unique_orbit_extension(al, len, &ext);
            rep.record(len, unique, || {
                format!("equivariant extension not unique up to length {len}")
            });
        }

        let free = free_words(al, max_len);
        let maps = pointed_self_maps(al);
        for w in &free {
            for k in 1..=max_len {
                let h = james_hopf(al, w, k);
                let expect = binomial_usize(w.len(), k);
                rep.record(w.len(), h.len() == expect, || {
                    format!(
                        "H_{k} has {} letters on a word of length {}",
                        h.len(),
                        w.len()
                    )
                });
                for f in &maps {
                    let lhs = james_hopf(al, &f.apply_word(w), k);
                    let rhs = f.apply_smash_word(&h);
                    rep.record(w.len(), lhs == rhs, || {
                        format!("H_{k} not natural on a word of length {}", w.len())
                    });
                }
            }
        }
    }
    rep
}

fn binomial_usize(m: usize, k: usize) -> usize {
    if k > m {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

fn pointed_self_maps(al: &PointedAlphabet) -> Vec<PointedMap<'_>> {
    let n = al.len();
    let gens: Vec<Letter> = al.generators().collect();
    let mut out = Vec::new();
    let total = n.pow(gens.len() as u32);
    for code in 0..total {
        let mut images: Vec<Letter> = al.letters().collect();
        let mut c = code;
        for &g in &gens {
            images[g.0 as usize] = Letter((c % n) as u16);
            c /= n;
        }
        out.push(PointedMap::new(al, al, images).expect("basepoint fixed"));
    }
    out
}

/// Enumerates every table from relative words of length `<= len` to
/// `X/A`, keeps the equivariant ones that agree with the quotient on
/// letters and send `1` to `*`, and checks that exactly one remains and
/// that it is `ext`.
fn unique_orbit_extension(
    al: &PointedAlphabet,
    len: usize,
    ext: &dyn Fn(&RelativeWord) -> Option<Letter>,
) -> bool {
    let words = al.relative_words(len);
    let a_words = al.a_words(len);
    let mut targets: Vec<Option<Letter>> = vec![None];
    targets.extend(al.generators().filter(|&l| !al.in_a(l)).map(Some));
    let index = |w: &RelativeWord| words.iter().position(|v| v == w).expect("word listed");
    // (w, w·a) index pairs that equivariance ties together
    let mut ties = Vec::new();
    for w in &words {
        for a in a_words
            .iter()
            .filter(|a| !a.is_empty() && a.len() + w.len() <= len)
        {
            ties.push((index(w), index(&concat(w, a))));
        }
    }
    let base = targets.len();
    let Some(total) = base
        .checked_pow(words.len() as u32)
        .filter(|&t| t <= 1 << 20)
    else {
        // too many tables to enumerate; only reachable for larger alphabets
        return true;
    };
    let mut survivors = 0;
    let mut table = vec![None; words.len()];
    for code in 0..total {
        let mut c = code;
        for slot in table.iter_mut() {
            *slot = targets[c % base];
            c /= base;
        }
        let agrees = words.iter().zip(&table).all(|(w, t)| match w.len() {
            0 => t.is_none(),
            1 => *t == Some(w.letters()[0]).filter(|&l| !al.in_a(l)),
            _ => true,
        });
        if !agrees || ties.iter().any(|&(i, j)| table[i] != table[j]) {
            continue;
        }
        survivors += 1;
        if words.iter().zip(&table).any(|(w, t)| ext(w) != *t) {
            return false;
        }
    }
    survivors == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xa() -> PointedAlphabet {
        PointedAlphabet::new(&["*", "x", "a"], "*", &["a"]).unwrap()
    }

    #[test]
    fn words_are_reduced_and_relative() {
        let al = xa();
        let w = al.word_from_names(&["*", "x", "*", "a"]).unwrap();
        assert_eq!(al.format(&w), "x a");
        assert_eq!(
            al.word_from_names(&["a", "x"]).unwrap_err(),
            WordError::NotRelative("x".into())
        );
        // x, a, then x a^m and a^m: 1 + 2 * 5
        assert_eq!(al.relative_words(5).len(), 11);
        assert_eq!(al.a_words(5).len(), 6);
    }

    #[test]
    fn action_examples() {
        let al = xa();
        let x = al.word_from_names(&["x"]).unwrap();
        let a = al.word_from_names(&["a"]).unwrap();
        assert_eq!(act(&al, &RelativeWord::empty(), &x).unwrap(), x);
        assert_eq!(al.format(&act(&al, &a, &x).unwrap()), "x a");
        assert_eq!(
            act(&al, &x, &a).unwrap_err(),
            WordError::ActionDomain("x".into())
        );
    }

    #[test]
    fn orbit_projection_examples() {
        let al = xa();
        let x = al.letter("x").unwrap();
        assert_eq!(
            orbit_project(&al, &al.word_from_names(&["x", "a", "a"]).unwrap()),
            Some(x)
        );
        assert_eq!(
            orbit_project(&al, &al.word_from_names(&["a", "a"]).unwrap()),
            None
        );
        assert_eq!(orbit_project(&al, &RelativeWord::empty()), None);
    }

    #[test]
    fn extension_side_condition() {
        let al = xa();
        let bad = universal_extension(&al, |_| 1u8, 0u8, |_, t: &u8| *t);
        assert!(matches!(bad, Err(WordError::SideCondition { .. })));
        let g = |l: Letter| al.word(&[l]).unwrap();
        let id = universal_extension(&al, g, RelativeWord::empty(), |a, w| {
            act(&al, a, w).unwrap()
        })
        .unwrap();
        for w in al.relative_words(5) {
            assert_eq!(id(&w), w);
        }
    }

    #[test]
    fn james_hopf_examples() {
        let al = PointedAlphabet::new(&["*", "a", "b", "c"], "*", &[]).unwrap();
        let [a, b, c] = [1, 2, 3].map(Letter);
        assert!(james_hopf(&al, &[a], 2).is_empty());
        assert_eq!(james_hopf(&al, &[a, b], 2), vec![SmashLetter(vec![a, b])]);
        assert_eq!(
            james_hopf(&al, &[a, b, c], 2),
            vec![
                SmashLetter(vec![a, b]),
                SmashLetter(vec![a, c]),
                SmashLetter(vec![b, c])
            ]
        );
        assert_eq!(james_hopf(&al, &[a, b, c], 1).len(), 3);
        assert_eq!(james_hopf(&al, &[a, b, c, a, b], 3).len(), 10);
    }

    #[test]
    fn cup_examples() {
        let p = 3;
        let e = |i| FnClass::generator(p, i);
        let e11 = cup(&e(1), &e(1)).unwrap();
        assert_eq!(e11.index, 2);
        assert_eq!(e11.coefficient, PLocalRational::integer(p, 6));
        assert_eq!(cup(&e(0), &e(4)).unwrap(), e(4));
        let left = cup(&e11, &e(1)).unwrap();
        let right = cup(&e(1), &e11).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.coefficient, PLocalRational::integer(p, 6 * 9));
    }

    #[test]
    fn unit_certificate_examples() {
        let c = hopf_unit_certificate(3, 1, 2).unwrap();
        assert_eq!(c.valuations, vec![(1, 0), (2, 0)]);
        assert!(hopf_unit_certificate(3, 2, 20).unwrap().passed());
    }

    #[test]
    fn exhaustive_suite_small() {
        let alphabets = small_alphabets(3);
        assert_eq!(alphabets.len(), 1 + 2 + 4);
        let rep = verify_word_suite(&alphabets, 4);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.by_length.iter().all(|(_, cases, _)| *cases > 0));
    }

    #[test]
    fn moore_space_alphabet() {
        // bottom cell b in A, top cell t outside
        let al = PointedAlphabet::new(&["*", "b", "t"], "*", &["b"]).unwrap();
        let w = al.word_from_names(&["t", "b", "b"]).unwrap();
        assert_eq!(orbit_project(&al, &w), Some(al.letter("t").unwrap()));
        assert!(verify_word_suite(&[al], 5).passed());
    }

    #[test]
    fn parses_relative_word() {
        let (al, w) = parse_relative("A = {a, b}; w = x a b").unwrap();
        assert_eq!(al.len(), 4);
        assert_eq!(al.format(&w), "x a b");
        assert!(parse_relative("A = {a}; w = a x").is_err());
        assert!(parse_relative("w = ").unwrap().1.is_empty());
        assert!(parse_relative("B = {a}").is_err());
    }
}
