//! Cartan data, admissible diagram automorphisms and folding.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Cartan datum `(I, ( , ))` given by vertex labels and the symmetric
/// matrix `B[i][j] = (α_i, α_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    name: String,
    labels: Vec<String>,
    form: Vec<Vec<i64>>,
}

/// Canonical spelling of a vertex label: `2'`, `2p` and `2′` all become `2′`;
/// `2''`, `2pp` and `2″` become `2″`.
pub fn normalize_label(s: &str) -> String {
    let s = s.trim();
    let s = s.replace("''", "\u{2033}").replace('\'', "\u{2032}");
    if let Some(base) = s.strip_suffix("pp") {
        if !base.is_empty() && base.chars().all(|c| c.is_ascii_digit()) {
            return format!("{base}\u{2033}");
        }
    }
    if let Some(base) = s.strip_suffix('p') {
        if !base.is_empty() && base.chars().all(|c| c.is_ascii_digit()) {
            return format!("{base}\u{2032}");
        }
    }
    s
}

/// ASCII spelling of a label for command lines: `2′ → 2p`, `2″ → 2pp`.
pub fn ascii_label(s: &str) -> String {
    s.replace('\u{2033}', "pp").replace('\u{2032}', "p")
}

impl CartanDatum {
    pub fn new<S: AsRef<str>>(labels: &[S], form: Vec<Vec<i64>>) -> Result<Self> {
        Self::named("", labels, form)
    }

    pub fn named<S: AsRef<str>>(name: &str, labels: &[S], form: Vec<Vec<i64>>) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|l| normalize_label(l.as_ref())).collect();
        let n = labels.len();
        let mut problems = Vec::new();
        if form.len() != n || form.iter().any(|r| r.len() != n) {
            problems.push(format!("form must be {n}x{n}"));
            return Err(Error::InvalidDatum(problems));
        }
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                problems.push(format!("duplicate label {l}"));
            }
        }
        for i in 0..n {
            let b = form[i][i];
            if b <= 0 || b % 2 != 0 {
                problems.push(format!("({0},{0}) = {b} is not in 2Z>0", labels[i]));
                continue;
            }
            for j in 0..n {
                if form[i][j] != form[j][i] {
                    problems.push(format!("form not symmetric at ({},{})", labels[i], labels[j]));
                }
                if i != j {
                    let x = 2 * form[i][j];
                    if x > 0 || x % b != 0 {
                        problems.push(format!(
                            "2({},{})/({},{}) = {}/{} is not a nonpositive integer",
                            labels[i], labels[j], labels[i], labels[i], x, b
                        ));
                    }
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidDatum(problems));
        }
        Ok(CartanDatum { name: name.to_string(), labels, form })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        let l = normalize_label(label);
        self.labels.iter().position(|x| *x == l).ok_or(Error::UnknownLabel(label.to_string()))
    }

    pub fn form_matrix(&self) -> &[Vec<i64>] {
        &self.form
    }

    /// `(α_i, α_j)`.
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.form[i][j]
    }

    /// Cartan matrix entry `a_ij = 2(α_i, α_j)/(α_i, α_i)`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        2 * self.form[i][j] / self.form[i][i]
    }

    /// `d_i = (α_i, α_i)/2`, so that `q_i = q^{d_i}`.
    pub fn d(&self, i: usize) -> u32 {
        (self.form[i][i] / 2) as u32
    }

    pub fn is_simply_laced(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            self.form[i][i] == 2 && (0..n).all(|j| i == j || matches!(self.form[i][j], 0 | -1))
        })
    }

    /// `(λ, μ)` for vectors over the simple roots.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank() {
                s += x[i] * self.form[i][j] * y[j];
            }
        }
        s
    }

    /// Positive definiteness by Sylvester's criterion (exact, fraction-free).
    pub fn is_finite_type(&self) -> bool {
        let n = self.rank();
        let mut m: Vec<Vec<i128>> =
            self.form.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] <= 0 {
                return false;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        true
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.name.is_empty() {
            write!(f, "{} ", self.name)?;
        }
        write!(f, "I = {{{}}}", self.labels.join(", "))
    }
}

/// Builds and validates a datum.
pub fn make_datum<S: AsRef<str>>(labels: &[S], form: Vec<Vec<i64>>) -> Result<CartanDatum> {
    CartanDatum::new(labels, form)
}

/// An admissible, form-preserving permutation `σ` of the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramAut {
    perm: Vec<usize>,
    order: u8,
    orbits: Vec<Vec<usize>>,
}

impl DiagramAut {
    pub fn identity(datum: &CartanDatum) -> Self {
        let n = datum.rank();
        DiagramAut { perm: (0..n).collect(), order: 1, orbits: (0..n).map(|i| vec![i]).collect() }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// ε; `1` for the identity.
    pub fn order(&self) -> u8 {
        self.order
    }

    /// Orbits sorted by smallest member; members in label order.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }
}

/// Validates `perm` (given as `label ↦ image` pairs in any order, or as the
/// list of images in label order) against `datum`.
pub fn make_automorphism(datum: &CartanDatum, perm: &[usize]) -> Result<DiagramAut> {
    let n = datum.rank();
    if perm.len() != n {
        return Err(Error::InvalidAutomorphism(format!("expected {n} images, got {}", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidAutomorphism("not a permutation of the labels".into()));
        }
        seen[p] = true;
    }
    for i in 0..n {
        for j in 0..n {
            if datum.b(perm[i], perm[j]) != datum.b(i, j) {
                return Err(Error::InvalidAutomorphism(format!(
                    "does not preserve the form at ({}, {})",
                    datum.label(i),
                    datum.label(j)
                )));
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut done = vec![false; n];
    let mut order = 1usize;
    for i in 0..n {
        if done[i] {
            continue;
        }
        let mut orb = vec![i];
        done[i] = true;
        let mut j = perm[i];
        while j != i {
            orb.push(j);
            done[j] = true;
            j = perm[j];
        }
        order = lcm(order, orb.len());
        orb.sort_unstable();
        orbits.push(orb);
    }
    for orb in &orbits {
        for &i in orb {
            for &j in orb {
                if i != j && datum.b(i, j) != 0 {
                    return Err(Error::InvalidAutomorphism(format!(
                        "not admissible: ({}, {}) = {} inside one orbit",
                        datum.label(i),
                        datum.label(j),
                        datum.b(i, j)
                    )));
                }
            }
        }
    }
    if !matches!(order, 1..=3) {
        return Err(Error::InvalidAutomorphism(format!("order {order} is not 2 or 3")));
    }
    Ok(DiagramAut { perm: perm.to_vec(), order: order as u8, orbits })
}

/// [`make_automorphism`] with the permutation given by labels.
pub fn make_automorphism_by_labels<S: AsRef<str>>(
    datum: &CartanDatum,
    pairs: &[(S, S)],
) -> Result<DiagramAut> {
    let mut perm: Vec<usize> = (0..datum.rank()).collect();
    for (a, b) in pairs {
        perm[datum.index_of(a.as_ref())?] = datum.index_of(b.as_ref())?;
    }
    make_automorphism(datum, &perm)
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// The folded datum `ulX` together with the orbit map `I → ulI`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedDatum {
    pub datum: CartanDatum,
    /// `orbit_of[i]` is the index in `ulI` of the orbit containing `i`.
    pub orbit_of: Vec<usize>,
    /// Members of each orbit, in label order.
    pub orbits: Vec<Vec<usize>>,
}

impl FoldedDatum {
    pub fn orbit_size(&self, eta: usize) -> usize {
        self.orbits[eta].len()
    }
}

/// Folds `datum` along `aut`; orbit `η` gets the label of its smallest member.
pub fn fold(datum: &CartanDatum, aut: &DiagramAut) -> FoldedDatum {
    let orbits = aut.orbits().to_vec();
    let m = orbits.len();
    let mut orbit_of = vec![0; datum.rank()];
    for (k, orb) in orbits.iter().enumerate() {
        for &i in orb {
            orbit_of[i] = k;
        }
    }
    let mut form = vec![vec![0i64; m]; m];
    for a in 0..m {
        for b in 0..m {
            form[a][b] = if a == b {
                2 * orbits[a].len() as i64
            } else {
                let mut cnt = 0;
                for &i in &orbits[a] {
                    for &j in &orbits[b] {
                        if datum.b(i, j) != 0 {
                            cnt += 1;
                        }
                    }
                }
                -cnt
            };
        }
    }
    let labels: Vec<String> = orbits.iter().map(|o| datum.label(o[0]).to_string()).collect();
    let name = match (datum.name(), aut.is_identity()) {
        (n, true) => n.to_string(),
        ("A3", _) => "B2".to_string(),
        ("D4", _) => "G2".to_string(),
        ("A2xA2", _) => "A2".to_string(),
        _ => String::new(),
    };
    let datum = CartanDatum::named(&name, &labels, form).expect("folding yields a Cartan datum");
    FoldedDatum { datum, orbit_of, orbits }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 6] = ["A2", "A2xA2", "A3", "D4", "B2", "G2"];

/// Builtin data with the labelings of the reference computations:
/// `A3` has `I = {1, 2, 2′}` with `1` the middle vertex and `σ: 2 ↔ 2′`;
/// `D4` has `I = {1, 2, 2′, 2″}` with `σ: 2 → 2′ → 2″ → 2`;
/// `A2xA2` has `I = {1, 2, 1′, 2′}` with `σ: i ↔ i′`;
/// `B2` and `G2` are the folds of `A3` and `D4`.
pub fn builtin(name: &str) -> Result<(CartanDatum, Option<DiagramAut>)> {
    let key = name.trim().to_ascii_uppercase().replace('×', "X");
    match key.as_str() {
        "A2" => Ok((CartanDatum::named("A2", &["1", "2"], vec![vec![2, -1], vec![-1, 2]])?, None)),
        "A2XA2" => {
            let x = CartanDatum::named(
                "A2xA2",
                &["1", "2", "1′", "2′"],
                vec![vec![2, -1, 0, 0], vec![-1, 2, 0, 0], vec![0, 0, 2, -1], vec![0, 0, -1, 2]],
            )?;
            let s = make_automorphism(&x, &[2, 3, 0, 1])?;
            Ok((x, Some(s)))
        }
        "A3" => {
            let x = CartanDatum::named(
                "A3",
                &["1", "2", "2′"],
                vec![vec![2, -1, -1], vec![-1, 2, 0], vec![-1, 0, 2]],
            )?;
            let s = make_automorphism(&x, &[0, 2, 1])?;
            Ok((x, Some(s)))
        }
        "D4" => {
            let x = CartanDatum::named(
                "D4",
                &["1", "2", "2′", "2″"],
                vec![vec![2, -1, -1, -1], vec![-1, 2, 0, 0], vec![-1, 0, 2, 0], vec![-1, 0, 0, 2]],
            )?;
            let s = make_automorphism(&x, &[0, 2, 3, 1])?;
            Ok((x, Some(s)))
        }
        "B2" => {
            let (x, s) = builtin("A3")?;
            Ok((fold(&x, &s.expect("A3 has σ")).datum, None))
        }
        "G2" => {
            let (x, s) = builtin("D4")?;
            Ok((fold(&x, &s.expect("D4 has σ")).datum, None))
        }
        _ => Err(Error::UnknownDatum(name.to_string())),
    }
}

/// The pair `(X, σ)` whose fold is the named datum (`B2 ← A3`, `G2 ← D4`,
/// `A2 ← A2xA2`); the unfolded names map to themselves.
pub fn builtin_pair(name: &str) -> Result<(Arc<CartanDatum>, DiagramAut)> {
    let key = name.trim().to_ascii_uppercase().replace('×', "X");
    let src = match key.as_str() {
        "B2" | "A3" => "A3",
        "G2" | "D4" => "D4",
        "A2" | "A2XA2" => "A2xA2",
        _ => return Err(Error::UnknownDatum(name.to_string())),
    };
    let (x, s) = builtin(src)?;
    Ok((Arc::new(x), s.expect("builtin pairs carry σ")))
}

/// JSON description used by the command line.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DatumJson {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub labels: Vec<String>,
    pub form: Vec<Vec<i64>>,
    /// Images of the labels under σ, in label order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<String>>,
}

impl DatumJson {
    pub fn from_datum(x: &CartanDatum, aut: Option<&DiagramAut>) -> Self {
        DatumJson {
            name: x.name().to_string(),
            labels: x.labels().to_vec(),
            form: x.form_matrix().to_vec(),
            sigma: aut.map(|s| s.perm().iter().map(|&j| x.label(j).to_string()).collect()),
        }
    }

    pub fn build(&self) -> Result<(CartanDatum, Option<DiagramAut>)> {
        let x = CartanDatum::named(&self.name, &self.labels, self.form.clone())?;
        let aut = match &self.sigma {
            None => None,
            Some(images) => {
                let perm = images.iter().map(|l| x.index_of(l)).collect::<Result<Vec<_>>>()?;
                Some(make_automorphism(&x, &perm)?)
            }
        };
        Ok((x, aut))
    }
}
