//! Precompiled f64 evaluation for Monte Carlo and quadrature inner loops.
//!
//! The polynomial is lowered once into a nested dense Horner tree (grouped by
//! the last variable, recursively), so per-point evaluation does no allocation
//! and no exponentiation.

use num_traits::ToPrimitive;

use super::Polynomial;

#[derive(Debug, Clone)]
enum Node {
    Const(f64),
    /// `sum_k coeffs[k] * x[var]^k`, evaluated by Horner.
    Horner { var: usize, coeffs: Vec<Node> },
}

/// An immutable f64 evaluator for one polynomial.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    n_vars: usize,
    root: Node,
}

impl CompiledPoly {
    pub fn new(p: &Polynomial) -> Self {
        let terms: Vec<(Vec<u32>, f64)> = p
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), c.to_f64().unwrap_or(f64::NAN)))
            .collect();
        let refs: Vec<(&[u32], f64)> = terms.iter().map(|(e, c)| (e.as_slice(), *c)).collect();
        CompiledPoly {
            n_vars: p.n_vars(),
            root: build(&refs, p.n_vars()),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.n_vars);
        eval_node(&self.root, x)
    }
}

fn build(terms: &[(&[u32], f64)], n_vars: usize) -> Node {
    if terms.is_empty() {
        return Node::Const(0.0);
    }
    if n_vars == 0 {
        return Node::Const(terms.iter().map(|(_, c)| c).sum());
    }
    let var = n_vars - 1;
    let max_e = terms.iter().map(|(e, _)| e[var]).max().unwrap() as usize;
    let mut buckets: Vec<Vec<(&[u32], f64)>> = vec![Vec::new(); max_e + 1];
    for &(exps, c) in terms {
        buckets[exps[var] as usize].push((&exps[..var], c));
    }
    let coeffs = buckets
        .into_iter()
        .map(|group| build(&group, var))
        .collect();
    Node::Horner { var, coeffs }
}

fn eval_node(node: &Node, x: &[f64]) -> f64 {
    match node {
        Node::Const(c) => *c,
        Node::Horner { var, coeffs } => {
            let xv = x[*var];
            let mut acc = 0.0;
            for c in coeffs.iter().rev() {
                acc = acc * xv + eval_node(c, x);
            }
            acc
        }
    }
}
