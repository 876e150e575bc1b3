//! Homogeneous binary forms in `x, y` with exact coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A form of the given degree; `coeffs[i]` multiplies `x^(deg-i) y^i`.
/// Forms of negative degree are always zero and carry no coefficients; they
/// all compare equal.
#[derive(Clone)]
pub struct BinaryForm {
    degree: i64,
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn zero(degree: i64) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![Rational::zero(); (degree + 1).max(0) as usize],
        }
    }

    pub fn new(degree: i64, coeffs: Vec<Rational>) -> Result<Self> {
        if degree < 0 {
            if coeffs.iter().any(|c| !c.is_zero()) {
                return Err(Error::invalid(format!("form of degree {degree} must be zero")));
            }
            return Ok(BinaryForm::zero(degree));
        }
        if coeffs.len() != (degree + 1) as usize {
            return Err(Error::invalid(format!(
                "form of degree {degree} needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(BinaryForm { degree, coeffs })
    }

    /// `c x^a y^b`.
    pub fn monomial(a: i64, b: i64, c: Rational) -> Self {
        let mut f = BinaryForm::zero(a + b);
        f.coeffs[b as usize] = c;
        f
    }

    pub fn constant(c: Rational) -> Self {
        BinaryForm::monomial(0, 0, c)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = BinaryForm::zero(self.degree + other.degree);
        if self.degree < 0 || other.degree < 0 {
            return out;
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Sum of two forms; a zero summand adopts the other's degree.
    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> BinaryForm {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> BinaryForm {
        self.scale(&-Rational::one())
    }

    /// Value at `(x, y) = (t, 1)`.
    pub fn eval_affine(&self, t: &Rational) -> Rational {
        // Horner in t over coefficients of decreasing x-degree
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn parse(s: &str, degree: i64) -> Result<Self> {
        let bad = |why: &str| Error::invalid(format!("cannot parse form '{s}': {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = BinaryForm::zero(degree);
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut terms = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        for term in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-Rational::one(), &term[1..]),
                b'+' => (Rational::one(), &term[1..]),
                _ => (Rational::one(), term),
            };
            let split = body.find(['x', 'y']).unwrap_or(body.len());
            let coef_txt = body[..split].trim_end_matches('*');
            let coef = if coef_txt.is_empty() {
                Rational::one()
            } else {
                coef_txt.parse::<Rational>().map_err(|_| bad("bad coefficient"))?
            };
            let (mut a, mut b) = (0i64, 0i64);
            let mut rest = &body[split..];
            while !rest.is_empty() {
                let var = rest.as_bytes()[0];
                rest = &rest[1..];
                let mut exp = 1i64;
                if let Some(r) = rest.strip_prefix('^') {
                    let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                    exp = r[..end].parse().map_err(|_| bad("bad exponent"))?;
                    rest = &r[end..];
                }
                match var {
                    b'x' => a += exp,
                    b'y' => b += exp,
                    _ => return Err(bad("unexpected character")),
                }
                rest = rest.strip_prefix('*').unwrap_or(rest);
            }
            let c = sign * coef;
            if c.is_zero() {
                continue;
            }
            if a + b != degree {
                return Err(bad(&format!("term of degree {} in a form of degree {degree}", a + b)));
            }
            out = out.add(&BinaryForm::monomial(a, b, c));
        }
        Ok(out)
    }
}

impl BinaryForm {
    fn key(&self) -> (i64, &[Rational]) {
        (self.degree.max(-1), &self.coeffs)
    }
}

impl PartialEq for BinaryForm {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for BinaryForm {}

impl std::hash::Hash for BinaryForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for BinaryForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BinaryForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = (self.degree - i as i64, i as i64);
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut vars = String::new();
            for (v, e) in [('x', a), ('y', b)] {
                match e {
                    0 => {}
                    1 => vars.push(v),
                    _ => vars.push_str(&format!("{v}^{e}")),
                }
            }
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == Rational::one() {
                f.write_str(&vars)?;
            } else {
                write!(f, "{mag}{vars}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; deg {}]", self, self.degree)
    }
}

/// Determinant of a small square matrix of forms by cofactor expansion.
/// Row `i` of the matrix is homogeneous of a fixed degree, so the result
/// is a form of degree equal to the sum of the row degrees.
pub fn det(m: &[Vec<BinaryForm>], row_degrees: &[i64]) -> BinaryForm {
    let n = m.len();
    let total: i64 = row_degrees.iter().sum();
    if n == 0 {
        return BinaryForm::constant(Rational::one());
    }
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, row_degrees, 0, &cols, total)
}

fn det_rec(m: &[Vec<BinaryForm>], degs: &[i64], row: usize, cols: &[usize], total: i64) -> BinaryForm {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let rest_deg: i64 = degs[row + 1..].iter().sum();
    let mut acc = BinaryForm::zero(total - degs[..row].iter().sum::<i64>());
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, degs, row + 1, &sub_cols, rest_deg);
        let term = entry.mul(&minor);
        acc = if pos % 2 == 0 { acc.add(&term) } else { acc.add(&term.neg()) };
    }
    acc
}
