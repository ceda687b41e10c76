//! Canonical printer: descending graded-lex term order, explicit `*` and `^`,
//! rational coefficients in `p/q` form. `parse(print(p)) == p` exactly.

use std::fmt;

use num_traits::{One, Signed};

use super::Polynomial;

/// Default variable names for an `n`-variable polynomial: `x,y,z` up to
/// three variables, `x1..xn` beyond.
pub fn default_var_names(n_vars: usize) -> Vec<String> {
    if n_vars <= 3 {
        ["x", "y", "z"][..n_vars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n_vars).map(|i| format!("x{i}")).collect()
    }
}

impl Polynomial {
    /// Render with explicit variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.n_vars(), "variable name count mismatch");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.total_degree() == 0;
            if !mag.is_one() || is_const {
                factors.push(if mag.denom().is_one() {
                    mag.numer().to_string()
                } else {
                    format!("{}/{}", mag.numer(), mag.denom())
                });
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&default_var_names(self.n_vars())))
    }
}
