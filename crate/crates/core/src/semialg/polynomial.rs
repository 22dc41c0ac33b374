use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, SerializeStruct, Serializer};

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&e, &v)| v.powi(e as i32)).product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `degree` supported on `vars`.
pub fn monomials_of_degree(nvars: usize, vars: &[usize], degree: u32) -> Vec<Monomial> {
    fn rec(vars: &[usize], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if left == 0 {
                    out.push(Monomial(cur.clone()));
                }
            }
            Some((&v, rest)) => {
                for e in (0..=left).rev() {
                    cur[v] = e;
                    rec(rest, left - e, cur, out);
                }
                cur[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, degree, &mut vec![0; nvars], &mut out);
    out.sort();
    out
}

/// Sparse multivariate polynomial with real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, f64>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(Monomial(e), 1.0)])
    }

    /// `sum_i coeffs[i] x_i`.
    pub fn linear(coeffs: &[f64]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, &c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (Monomial(e), c)
            }),
        )
    }

    /// Sums duplicate monomials and drops exact zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, f64)>) -> Self {
        let mut p = Self::zero(nvars);
        for (mono, c) in terms {
            assert_eq!(mono.0.len(), nvars, "exponent vector length");
            *p.terms.entry(mono).or_insert(0.0) += c;
        }
        p.terms.retain(|_, c| *c != 0.0);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading (largest graded-lex) monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, f64)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> f64 {
        self.terms.get(&Monomial(exps.to_vec())).copied().unwrap_or(0.0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(m, c)| c * m.eval(x)).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c * s)))
    }

    /// Drops coefficients with `|c| <= rel * max |c|`.
    pub fn pruned(&self, rel: f64) -> Self {
        let max = self.terms.values().fold(0.0_f64, |a, c| a.max(c.abs()));
        let mut p = self.clone();
        p.terms.retain(|_, c| c.abs() > rel * max);
        p
    }

    /// Embeds into a ring with more variables (new ones appended).
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        Self::from_terms(
            nvars,
            self.terms.iter().map(|(m, &c)| {
                let mut e = m.0.clone();
                e.resize(nvars, 0);
                (Monomial(e), c)
            }),
        )
    }

    /// Largest absolute coefficient difference, over the union of supports.
    pub fn max_coefficient_distance(&self, other: &Polynomial) -> f64 {
        let keys: std::collections::BTreeSet<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|k| {
                let a = self.terms.get(k).copied().unwrap_or(0.0);
                let b = other.terms.get(k).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Prefix (SMT-LIB style) rendering with the given variable names.
    pub fn to_prefix(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0.0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                if (c.abs() - 1.0).abs() > 0.0 || m.degree() == 0 {
                    factors.push(smt_decimal(c.abs()));
                }
                for (i, &e) in m.0.iter().enumerate() {
                    for _ in 0..e {
                        factors.push(names[i].clone());
                    }
                }
                let body =
                    if factors.len() == 1 { factors.pop().unwrap() } else { format!("(* {})", factors.join(" ")) };
                if c < 0.0 {
                    format!("(- {body})")
                } else {
                    body
                }
            })
            .collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("(+ {})", parts.join(" "))
        }
    }

    /// Human-readable infix rendering, leading term first.
    pub fn to_infix(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let c = round_sig(c);
            if k == 0 {
                if c < 0.0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0.0 { " - " } else { " + " });
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                    .collect();
            if c.abs() != 1.0 || vars.is_empty() {
                let _ = write!(s, "{}", c.abs());
                if !vars.is_empty() {
                    s.push('*');
                }
            }
            s.push_str(&vars.join("*"));
        }
        s
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig(c: f64) -> f64 {
    if c == 0.0 || !c.is_finite() {
        return c;
    }
    format!("{c:.11e}").parse().unwrap_or(c)
}

/// Nonnegative decimal literal accepted by SMT-LIB (`2.0`, `0.5`).
pub fn smt_decimal(c: f64) -> String {
    let s = format!("{}", round_sig(c));
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a Polynomial);
        struct Term<'a>(f64, &'a Monomial);
        impl Serialize for Term<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut st = s.serialize_struct("Term", 2)?;
                st.serialize_field("c", &round_sig(self.0))?;
                st.serialize_field("e", &self.1 .0)?;
                st.end()
            }
        }
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.num_terms()))?;
                for (m, c) in self.0.terms() {
                    seq.serialize_element(&Term(c, m))?;
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("Polynomial", 1)?;
        st.serialize_field("terms", &Terms(self))?;
        st.end()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        Polynomial::from_terms(self.nvars, self.terms.iter().chain(rhs.terms.iter()).map(|(m, &c)| (m.clone(), c)))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                terms.push((Monomial(e), ca * cb));
            }
        }
        Polynomial::from_terms(self.nvars, terms)
    }
}
