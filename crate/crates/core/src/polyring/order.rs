use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::{revlex_tail, Monomial, MAX_VARS};

/// Monomial orders on `k[x_0..x_n]`. Module orders (position/term and
/// Schreyer-induced) are built on top of these in [`crate::groebner`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    Grevlex,
    /// Lexicographic with `x_0 > x_1 > ...`.
    Lex,
    /// Product order eliminating the first `block` variables: grevlex on
    /// `x_0..x_{block-1}`, ties broken by grevlex on the rest.
    Elimination { block: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.grevlex_cmp(b),
            MonomialOrder::Lex => a.lex_cmp(b),
            MonomialOrder::Elimination { block } => a
                .partial_degree(0..block)
                .cmp(&b.partial_degree(0..block))
                .then_with(|| revlex_tail(a, b, 0, block))
                .then_with(|| a.partial_degree(block..MAX_VARS).cmp(&b.partial_degree(block..MAX_VARS)))
                .then_with(|| revlex_tail(a, b, block, MAX_VARS)),
        }
    }

    /// Whether the order refines total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..4, 5).prop_map(|v| Monomial::new(&v))
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            (1usize..4).prop_map(|block| MonomialOrder::Elimination { block }),
        ]
    }

    proptest! {
        #[test]
        fn order_is_total_and_multiplicative(o in orders(), a in mono(), b in mono(), c in mono()) {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
            if ab == Ordering::Greater && o.cmp(&b, &c) == Ordering::Greater {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Greater);
            }
            // 1 is the smallest monomial
            prop_assert_ne!(o.cmp(&a, &Monomial::ONE), Ordering::Less);
        }

    }

    #[test]
    fn elimination_prefers_block() {
        let o = MonomialOrder::Elimination { block: 1 };
        // x0 beats any power of x1
        assert_eq!(o.cmp(&Monomial::var(0), &Monomial::var_pow(1, 9)), Ordering::Greater);
    }
}
