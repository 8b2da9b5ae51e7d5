/// Union-find where every element also carries a parity relative to its root.
/// `union(a, b, flip)` records `parity(a) ^ parity(b) == flip`; a contradicting
/// union marks the class as twisted instead of failing.
#[derive(Debug, Clone)]
pub(crate) struct SignedUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    twisted: Vec<bool>,
}

impl SignedUnionFind {
    pub fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n).collect(), parity: vec![false; n], twisted: vec![false; n] }
    }

    /// Root and parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Walk back from the node nearest the root, accumulating parity.
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if x == root { false } else { self.parity[x] })
    }

    pub fn union(&mut self, a: usize, b: usize, flip: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != flip {
                self.twisted[ra] = true;
            }
            return;
        }
        // Keep the smaller index as root so numbering follows the smallest member.
        let (root, child) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[child] = root;
        self.parity[child] = pa ^ pb ^ flip;
        self.twisted[root] |= self.twisted[child];
    }

    pub fn is_twisted(&mut self, x: usize) -> bool {
        let (r, _) = self.find(x);
        self.twisted[r]
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// Dense class numbers in order of each class's smallest member, plus the
    /// parity of every element relative to that smallest member.
    pub fn classes(&mut self) -> (Vec<usize>, Vec<bool>, usize) {
        let n = self.len();
        let mut number = vec![usize::MAX; n];
        let mut class = vec![0; n];
        let mut parity = vec![false; n];
        let mut count = 0;
        for x in 0..n {
            let (r, p) = self.find(x);
            if number[r] == usize::MAX {
                number[r] = count;
                count += 1;
            }
            class[x] = number[r];
            parity[x] = p;
        }
        // Roots are the smallest members, so parity relative to root is what we want.
        (class, parity, count)
    }
}
