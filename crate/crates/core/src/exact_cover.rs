//! Exact cover by dancing links (Knuth's Algorithm X).

/// An exact cover instance: a set of columns and rows listing the columns
/// they cover. Every solution is a set of rows covering each column once.
#[derive(Debug, Clone)]
pub struct ExactCover {
    columns: usize,
    rows: Vec<Vec<usize>>,
}

impl ExactCover {
    pub fn new(columns: usize) -> Self {
        ExactCover {
            columns,
            rows: Vec::new(),
        }
    }

    /// Adds a row and returns its index. Column ids must be `< columns`.
    pub fn add_row(&mut self, cols: impl IntoIterator<Item = usize>) -> usize {
        let mut cols: Vec<usize> = cols.into_iter().collect();
        cols.sort_unstable();
        cols.dedup();
        assert!(
            cols.iter().all(|&c| c < self.columns),
            "column out of range"
        );
        self.rows.push(cols);
        self.rows.len() - 1
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn count(&self) -> u64 {
        let mut n = 0u64;
        self.for_each_solution(|_| n += 1);
        n
    }

    /// All solutions, each as an ascending list of row indices.
    pub fn solutions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_solution(|rows| {
            let mut rows = rows.to_vec();
            rows.sort_unstable();
            out.push(rows);
        });
        out
    }

    pub fn for_each_solution(&self, mut visit: impl FnMut(&[usize])) {
        let mut links = Links::build(self.columns, &self.rows);
        let mut partial = Vec::new();
        links.search(&mut partial, &mut visit);
    }
}

/// Node 0 is the root, nodes `1..=columns` are column headers, the rest
/// are row cells.
struct Links {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
}

impl Links {
    fn build(columns: usize, rows: &[Vec<usize>]) -> Self {
        let headers = columns + 1;
        let mut l = Links {
            left: (0..headers)
                .map(|i| if i == 0 { columns } else { i - 1 })
                .collect(),
            right: (0..headers)
                .map(|i| if i == columns { 0 } else { i + 1 })
                .collect(),
            up: (0..headers).collect(),
            down: (0..headers).collect(),
            col: (0..headers).collect(),
            row: vec![usize::MAX; headers],
            size: vec![0; headers],
        };
        for (r, cols) in rows.iter().enumerate() {
            let first = l.left.len();
            for (k, &c) in cols.iter().enumerate() {
                let header = c + 1;
                let node = l.left.len();
                let prev = if k == 0 { node } else { node - 1 };
                l.left.push(prev);
                l.right.push(first);
                l.right[prev] = node;
                l.left[first] = node;
                let last = l.up[header];
                l.up.push(last);
                l.down.push(header);
                l.down[last] = node;
                l.up[header] = node;
                l.col.push(header);
                l.row.push(r);
                l.size[header] += 1;
            }
        }
        l
    }

    fn cover(&mut self, c: usize) {
        let (lc, rc) = (self.left[c], self.right[c]);
        self.right[lc] = rc;
        self.left[rc] = lc;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (lc, rc) = (self.left[c], self.right[c]);
        self.right[lc] = c;
        self.left[rc] = c;
    }

    fn search(&mut self, partial: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if self.right[0] == 0 {
            visit(partial);
            return;
        }
        // column with fewest remaining rows
        let mut c = self.right[0];
        let mut j = self.right[c];
        while j != 0 {
            if self.size[j] < self.size[c] {
                c = j;
            }
            j = self.right[j];
        }
        if self.size[c] == 0 {
            return;
        }
        self.cover(c);
        let mut r = self.down[c];
        while r != c {
            partial.push(self.row[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.col[j]);
                j = self.right[j];
            }
            self.search(partial, visit);
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.col[j]);
                j = self.left[j];
            }
            partial.pop();
            r = self.down[r];
        }
        self.uncover(c);
    }
}
