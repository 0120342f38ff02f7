use std::cmp::Ordering;

use super::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Lex,
    DegRevLex,
}

/// A contiguous range of variables compared with one inner order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub kind: BlockKind,
}

/// Admissible term order given as a sequence of blocks.
///
/// Earlier blocks dominate later ones, which makes any proper prefix of the
/// blocks an elimination order for its variables. Plain lex and degrevlex are
/// the single-block cases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    blocks: Vec<Block>,
}

impl MonomialOrder {
    pub fn lex(n: usize) -> Self {
        Self::block(&[(n, BlockKind::Lex)])
    }

    pub fn degrevlex(n: usize) -> Self {
        Self::block(&[(n, BlockKind::DegRevLex)])
    }

    /// Blocks given as `(length, kind)`; empty blocks are dropped.
    pub fn block(spec: &[(usize, BlockKind)]) -> Self {
        let mut blocks = Vec::new();
        let mut start = 0;
        for &(len, kind) in spec {
            if len > 0 {
                blocks.push(Block {
                    start,
                    end: start + len,
                    kind,
                });
            }
            start += len;
        }
        MonomialOrder { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_vars(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.end)
    }

    /// The same order with one more block appended.
    pub fn extended(&self, len: usize, kind: BlockKind) -> Self {
        let mut blocks = self.blocks.clone();
        let start = self.num_vars();
        if len > 0 {
            blocks.push(Block {
                start,
                end: start + len,
                kind,
            });
        }
        MonomialOrder { blocks }
    }

    /// True if every variable in `vars` lies in a block strictly before all
    /// blocks containing variables outside `vars`.
    pub fn eliminates(&self, vars: &[usize]) -> bool {
        let mut seen_other = false;
        for b in &self.blocks {
            let inside = (b.start..b.end).filter(|i| vars.contains(i)).count();
            if inside > 0 && (seen_other || inside != b.end - b.start) {
                return false;
            }
            if inside == 0 {
                seen_other = true;
            }
        }
        true
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (x, y) = (a.exps(), b.exps());
        if let [only] = self.blocks.as_slice() {
            if only.kind == BlockKind::DegRevLex {
                return a
                    .degree()
                    .cmp(&b.degree())
                    .then_with(|| revlex(x, y));
            }
        }
        for blk in &self.blocks {
            let (xs, ys) = (&x[blk.start..blk.end], &y[blk.start..blk.end]);
            let o = match blk.kind {
                BlockKind::Lex => xs.cmp(ys),
                BlockKind::DegRevLex => {
                    let dx: u32 = xs.iter().map(|&e| e as u32).sum();
                    let dy: u32 = ys.iter().map(|&e| e as u32).sum();
                    dx.cmp(&dy).then_with(|| revlex(xs, ys))
                }
            };
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

fn revlex(x: &[u16], y: &[u16]) -> Ordering {
    for i in (0..x.len()).rev() {
        if x[i] != y[i] {
            return y[i].cmp(&x[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrevlex_tie_break() {
        let o = MonomialOrder::degrevlex(2);
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_ignores_degree() {
        let o = MonomialOrder::lex(2);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 3])), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::block(&[(1, BlockKind::DegRevLex), (2, BlockKind::DegRevLex)]);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 3, 3])), Ordering::Greater);
        assert!(o.eliminates(&[0]));
        assert!(!o.eliminates(&[1]));
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u16..4, 5).prop_map(Monomial::new)
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::lex(5),
            MonomialOrder::degrevlex(5),
            MonomialOrder::block(&[(2, BlockKind::DegRevLex), (3, BlockKind::Lex)]),
            MonomialOrder::block(&[
                (1, BlockKind::Lex),
                (2, BlockKind::DegRevLex),
                (2, BlockKind::DegRevLex),
            ]),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn admissible(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            for o in orders() {
                let ab = o.cmp(&a, &b);
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_eq!(o.cmp(&b, &a), ab.reverse());
                prop_assert_ne!(o.cmp(&Monomial::one(5), &a), Ordering::Greater);
                if ab == Ordering::Equal {
                    prop_assert_eq!(&a, &b);
                }
            }
        }
    }
}
