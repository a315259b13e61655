//! Exhaustive enumeration of small terms.

use std::collections::BTreeSet;

use super::{normalize, NormalForm, SpaceTerm};

/// The atoms used by the standard sweep: `fin(2)`, `ω`, `2^ω`, `ℕ^ω`, `ℚ`.
pub fn sweep_atoms() -> Vec<SpaceTerm> {
    vec![SpaceTerm::Fin(2), SpaceTerm::Omega, SpaceTerm::Cantor, SpaceTerm::BaireSp, SpaceTerm::Rationals]
}

/// Every sum of products over `atoms` with at most `max_atoms` leaves, up to
/// reordering, paired with its leaf count.
pub fn sum_of_products(atoms: &[SpaceTerm], max_atoms: usize) -> Vec<(SpaceTerm, usize)> {
    // products as non-decreasing index sequences
    let mut products: Vec<Vec<usize>> = Vec::new();
    fn grow(atoms: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        let from = cur.last().copied().unwrap_or(0);
        for i in from..atoms {
            cur.push(i);
            grow(atoms, max, cur, out);
            cur.pop();
        }
    }
    grow(atoms.len(), max_atoms, &mut Vec::new(), &mut products);

    // sums as non-decreasing sequences of product indices
    let mut out = Vec::new();
    fn sums(products: &[Vec<usize>], budget: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for (i, p) in products.iter().enumerate().skip(from) {
            if p.len() <= budget {
                cur.push(i);
                sums(products, budget - p.len(), i, cur, out);
                cur.pop();
            }
        }
    }
    let mut shapes = Vec::new();
    sums(&products, max_atoms, 0, &mut Vec::new(), &mut shapes);
    for shape in shapes {
        let size = shape.iter().map(|&i| products[i].len()).sum();
        let term = SpaceTerm::sum(
            shape
                .iter()
                .map(|&i| SpaceTerm::prod(products[i].iter().map(|&a| atoms[a].clone()).collect()))
                .collect(),
        );
        out.push((term, size));
    }
    out
}

/// Distinct normal forms of the standard sweep with at most `max_atoms`
/// leaves, each with the smallest leaf count that produces it.
pub fn normal_forms_upto(max_atoms: usize) -> Vec<(NormalForm, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut terms = sum_of_products(&sweep_atoms(), max_atoms);
    terms.sort_by_key(|(_, n)| *n);
    for (t, n) in terms {
        let nf = normalize(&t);
        if seen.insert(nf.render()) {
            out.push((nf, n));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        // one atom: the five atoms; two atoms: 15 products and 15 sums
        assert_eq!(sum_of_products(&sweep_atoms(), 1).len(), 5);
        assert_eq!(sum_of_products(&sweep_atoms(), 2).len(), 35);
        let nfs = normal_forms_upto(2);
        assert!(nfs.iter().any(|(nf, _)| nf.render() == "fin(4)"));
    }
}
