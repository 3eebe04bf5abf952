//! Constructors: standard simplices, boundaries, horns, products with the
//! interval, cones, gluings/quotients and pushouts.

use std::collections::{HashMap, VecDeque};

use super::{
    subsets_of_size, Cell, DegWord, Simplex, SimplicialError, SimplicialMap, SimplicialSet,
    DEFAULT_DIMENSION_BOUND,
};

fn subset_name(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).collect()
}

/// The standard representable n-simplex. Nondegenerate k-cells are the
/// (k+1)-element subsets of {0..n}, named by their digits. Dimensions above
/// the default bound need an explicit bound.
pub fn standard_simplex(n: usize) -> Result<SimplicialSet, SimplicialError> {
    standard_simplex_with_bound(n, DEFAULT_DIMENSION_BOUND)
}

pub fn standard_simplex_with_bound(
    n: usize,
    bound: usize,
) -> Result<SimplicialSet, SimplicialError> {
    if n > bound {
        return Err(SimplicialError::Capacity { requested: n, bound });
    }
    let mut x = SimplicialSet::new(bound);
    let mut index: HashMap<Vec<usize>, Cell> = HashMap::new();
    for k in 0..=n {
        for subset in subsets_of_size(n + 1, k + 1) {
            let cell = x.add_cell(k, subset_name(&subset));
            index.insert(subset, cell);
        }
    }
    for k in 1..=n {
        for subset in subsets_of_size(n + 1, k + 1) {
            let cell = index[&subset];
            let faces = (0..=k)
                .map(|i| {
                    let mut f = subset.clone();
                    f.remove(i);
                    Simplex::nondegenerate(index[&f])
                })
                .collect();
            x.set_faces(cell, faces);
        }
    }
    Ok(x)
}

fn sub_simplex_of_standard(
    n: usize,
    keep: impl Fn(&[usize]) -> bool,
) -> Result<(SimplicialSet, SimplicialMap), SimplicialError> {
    let ambient = standard_simplex(n)?;
    let mut x = SimplicialSet::new(ambient.dimension_bound());
    let mut index: HashMap<Vec<usize>, Cell> = HashMap::new();
    for k in 0..=n {
        for subset in subsets_of_size(n + 1, k + 1) {
            if keep(&subset) {
                let cell = x.add_cell(k, subset_name(&subset));
                index.insert(subset, cell);
            }
        }
    }
    for (subset, &cell) in index.iter() {
        let k = cell.dim;
        if k == 0 {
            continue;
        }
        let faces = (0..=k)
            .map(|i| {
                let mut f = subset.clone();
                f.remove(i);
                Simplex::nondegenerate(index[&f])
            })
            .collect();
        x.set_faces(cell, faces);
    }
    let assignment = (0..=x.max_dim())
        .map(|d| {
            x.cells(d)
                .map(|c| {
                    let target = ambient.cell_by_name(d, x.name(c)).expect("subset cell");
                    Simplex::nondegenerate(target)
                })
                .collect()
        })
        .collect();
    let inclusion = SimplicialMap::new(x.clone(), ambient, assignment);
    Ok((x, inclusion))
}

/// Boundary of the standard n-simplex, with its inclusion.
pub fn boundary(n: usize) -> Result<(SimplicialSet, SimplicialMap), SimplicialError> {
    if n == 0 {
        // The boundary of a point is empty.
        let empty = SimplicialSet::new(DEFAULT_DIMENSION_BOUND);
        let ambient = standard_simplex(0)?;
        return Ok((empty.clone(), SimplicialMap::new(empty, ambient, Vec::new())));
    }
    sub_simplex_of_standard(n, |s| s.len() < n + 1)
}

/// The horn obtained from the n-simplex by omitting the top cell and its k-th
/// codimension-1 face.
pub fn horn(n: usize, k: usize) -> Result<(SimplicialSet, SimplicialMap), SimplicialError> {
    if n == 0 || k > n {
        return Err(SimplicialError::HornIndex { n, k });
    }
    sub_simplex_of_standard(n, |s| {
        if s.len() == n + 1 {
            return false;
        }
        // drop the face opposite vertex k
        !(s.len() == n && !s.contains(&k))
    })
}

/// A nondegenerate cell of a product: a jointly nondegenerate pair of
/// degeneracies of factor cells, recorded by their collapse sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct ProductCell {
    x: Cell,
    x_collapse: Vec<usize>,
    y: Cell,
    y_collapse: Vec<usize>,
}

pub struct ProductResult {
    pub product: SimplicialSet,
    pub proj_x: SimplicialMap,
    pub proj_y: SimplicialMap,
}

/// Binary product, truncated at the dimension bound of the first factor.
pub fn product(xs: &SimplicialSet, ys: &SimplicialSet) -> ProductResult {
    let bound = xs.dimension_bound();
    let top = (xs.max_dim() + ys.max_dim()).min(bound);
    let mut set = SimplicialSet::new(bound);
    let mut cells: Vec<Vec<ProductCell>> = vec![Vec::new(); top + 1];
    let mut index: HashMap<ProductCell, Cell> = HashMap::new();

    for n in 0..=top {
        for p in 0..=n.min(xs.max_dim()) {
            for x in xs.cells(p) {
                for q in 0..=n.min(ys.max_dim()) {
                    for y in ys.cells(q) {
                        for a in subsets_of_size(n, n - p) {
                            for b in subsets_of_size(n, n - q) {
                                if a.iter().any(|v| b.contains(v)) {
                                    continue;
                                }
                                let pc = ProductCell {
                                    x,
                                    x_collapse: a.clone(),
                                    y,
                                    y_collapse: b.clone(),
                                };
                                let name = format!(
                                    "{}[{}]*{}[{}]",
                                    xs.name(x),
                                    subset_name(&a),
                                    ys.name(y),
                                    subset_name(&b)
                                );
                                let cell = set.add_cell(n, name);
                                index.insert(pc.clone(), cell);
                                cells[n].push(pc);
                            }
                        }
                    }
                }
            }
        }
    }

    // Face tables via the Eilenberg-Zilber joint canonical form.
    for n in 1..=top {
        for (idx, pc) in cells[n].iter().enumerate() {
            let cell = Cell { dim: n, idx };
            let sx = Simplex { cell: pc.x, word: DegWord::from_collapse_set(pc.x_collapse.clone()) };
            let sy = Simplex { cell: pc.y, word: DegWord::from_collapse_set(pc.y_collapse.clone()) };
            let faces = (0..=n)
                .map(|i| {
                    let fx = xs.face(&sx, i);
                    let fy = ys.face(&sy, i);
                    joint_canonical(&fx, &fy, n - 1, &index)
                })
                .collect();
            set.set_faces(cell, faces);
        }
    }

    let proj = |side: usize| -> SimplicialMap {
        let target = if side == 0 { xs.clone() } else { ys.clone() };
        let assignment = (0..=top)
            .map(|n| {
                cells[n]
                    .iter()
                    .map(|pc| {
                        if side == 0 {
                            Simplex {
                                cell: pc.x,
                                word: DegWord::from_collapse_set(pc.x_collapse.clone()),
                            }
                        } else {
                            Simplex {
                                cell: pc.y,
                                word: DegWord::from_collapse_set(pc.y_collapse.clone()),
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(set.clone(), target, assignment)
    };

    ProductResult { product: set.clone(), proj_x: proj(0), proj_y: proj(1) }
}

/// Canonical form of a pair of equidimensional simplices as a degeneracy of a
/// jointly nondegenerate pair.
fn joint_canonical(
    fx: &Simplex,
    fy: &Simplex,
    dim: usize,
    index: &HashMap<ProductCell, Cell>,
) -> Simplex {
    let sx = fx.word.to_surjection(dim);
    let sy = fy.word.to_surjection(dim);
    let common: Vec<usize> = (0..dim)
        .filter(|&t| sx[t] == sx[t + 1] && sy[t] == sy[t + 1])
        .collect();
    // Remove position c+1 for each common collapse c.
    let keep: Vec<usize> =
        (0..=dim).filter(|&t| !(t >= 1 && common.contains(&(t - 1)))).collect();
    let reduce = |s: &[usize]| -> Vec<usize> {
        let picked: Vec<usize> = keep.iter().map(|&t| s[t]).collect();
        (0..picked.len().saturating_sub(1)).filter(|&t| picked[t] == picked[t + 1]).collect()
    };
    let pc = ProductCell {
        x: fx.cell,
        x_collapse: reduce(&sx),
        y: fy.cell,
        y_collapse: reduce(&sy),
    };
    let cell = *index.get(&pc).expect("reduced product cell present");
    Simplex { cell, word: DegWord::from_collapse_set(common) }
}

/// X × Δ¹ with the two projections.
pub fn product_with_interval(xs: &SimplicialSet) -> Result<ProductResult, SimplicialError> {
    let interval = standard_simplex_with_bound(1, xs.dimension_bound())?;
    Ok(product(xs, &interval))
}

pub struct ConeResult {
    pub cone: SimplicialSet,
    pub inclusion: SimplicialMap,
    pub point: Cell,
    /// cone cell lying over each base cell
    pub over: Vec<Vec<Cell>>,
}

/// The cone (join with a point, the point becoming vertex 0).
pub fn cone(xs: &SimplicialSet) -> Result<ConeResult, SimplicialError> {
    let bound = xs.dimension_bound();
    if !xs.is_cell_empty() && xs.max_dim() + 1 > bound {
        return Err(SimplicialError::Capacity { requested: xs.max_dim() + 1, bound });
    }
    let mut set = SimplicialSet::new(bound);
    let point_name = fresh_name("c", |n| xs.cell_by_name(0, n).is_some());
    let point = set.add_cell(0, point_name);
    // base cells keep their indices except in dimension 0 (shifted past the
    // cone point)
    let remap = |c: Cell| -> Cell {
        if c.dim == 0 {
            Cell { dim: 0, idx: c.idx + 1 }
        } else {
            c
        }
    };
    let remap_simplex =
        |s: &Simplex| -> Simplex { Simplex { cell: remap(s.cell), word: s.word.clone() } };
    for d in 0..=xs.max_dim() {
        for c in xs.cells(d) {
            set.add_cell(d, xs.name(c));
        }
    }
    let mut over: Vec<Vec<Cell>> = Vec::new();
    for d in 0..=xs.max_dim() {
        let mut row = Vec::new();
        for c in xs.cells(d) {
            let name = fresh_name(&format!("c_{}", xs.name(c)), |n| {
                set.cell_by_name(d + 1, n).is_some()
            });
            row.push(set.add_cell(d + 1, name));
        }
        over.push(row);
    }
    // faces of base cells
    for d in 1..=xs.max_dim() {
        for c in xs.cells(d) {
            let faces = xs.cell_faces(c).iter().map(&remap_simplex).collect();
            set.set_faces(remap(c), faces);
        }
    }
    // faces of cone cells: d_0 is the base cell, d_i (i>=1) cones the
    // (i-1)-th base face; coning a degeneracy shifts its word up by one.
    for d in 0..=xs.max_dim() {
        for c in xs.cells(d) {
            let cone_cell = over[d][c.idx];
            let mut faces = vec![remap_simplex(&Simplex::nondegenerate(c))];
            if d == 0 {
                faces.push(Simplex::nondegenerate(point));
            } else {
                for i in 0..=d {
                    let f = &xs.cell_faces(c)[i];
                    let shifted =
                        DegWord::from_canonical(f.word.indices().iter().map(|j| j + 1).collect());
                    faces.push(Simplex { cell: over[f.cell.dim][f.cell.idx], word: shifted });
                }
            }
            set.set_faces(cone_cell, faces);
        }
    }
    let assignment = (0..=if xs.is_cell_empty() { 0 } else { xs.max_dim() })
        .map(|d| xs.cells(d).map(|c| Simplex::nondegenerate(remap(c))).collect())
        .collect();
    let inclusion = SimplicialMap::new(xs.clone(), set.clone(), assignment);
    Ok(ConeResult { cone: set, inclusion, point, over })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    /// Returns true when the two classes were distinct. Smaller index wins as
    /// the representative so results are order-independent.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

pub struct GlueResult {
    pub quotient: SimplicialSet,
    pub projection: SimplicialMap,
}

/// Quotient of a simplicial set by a list of simplex identifications, closed
/// under all face and degeneracy consequences (union-find closure, truncated
/// at the dimension bound).
pub fn glue(
    xs: &SimplicialSet,
    identifications: &[(Simplex, Simplex)],
) -> Result<GlueResult, SimplicialError> {
    let bound = xs.dimension_bound();
    let tokens: Vec<Vec<Simplex>> = (0..=bound).map(|n| xs.all_simplices(n)).collect();
    let index: Vec<HashMap<Simplex, usize>> = tokens
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let mut uf: Vec<UnionFind> = tokens.iter().map(|v| UnionFind::new(v.len())).collect();

    let mut queue: VecDeque<(usize, usize, usize)> = VecDeque::new();
    for (a, b) in identifications {
        if a.dim() != b.dim() {
            return Err(SimplicialError::InconsistentIdentification(a.dim(), b.dim()));
        }
        let n = a.dim();
        queue.push_back((n, index[n][a], index[n][b]));
    }
    while let Some((n, a, b)) = queue.pop_front() {
        if !uf[n].union(a, b) {
            continue;
        }
        let (u, v) = (tokens[n][a].clone(), tokens[n][b].clone());
        if n >= 1 {
            for i in 0..=n {
                let fu = xs.face(&u, i);
                let fv = xs.face(&v, i);
                queue.push_back((n - 1, index[n - 1][&fu], index[n - 1][&fv]));
            }
        }
        if n < bound {
            for j in 0..=n {
                let su = xs.degeneracy(&u, j);
                let sv = xs.degeneracy(&v, j);
                queue.push_back((n + 1, index[n + 1][&su], index[n + 1][&sv]));
            }
        }
    }

    // A class is a nondegenerate cell of the quotient when none of its
    // members is degenerate.
    let mut class_members: Vec<HashMap<usize, Vec<usize>>> = Vec::new();
    for n in 0..=bound {
        let mut m: HashMap<usize, Vec<usize>> = HashMap::new();
        for t in 0..tokens[n].len() {
            m.entry(uf[n].find(t)).or_default().push(t);
        }
        class_members.push(m);
    }

    let mut set = SimplicialSet::new(bound);
    let mut new_cell: Vec<HashMap<usize, Cell>> = vec![HashMap::new(); bound + 1];
    for (n, classes) in class_members.iter().enumerate() {
        let mut roots: Vec<usize> = classes
            .iter()
            .filter(|(_, members)| members.iter().all(|&t| !tokens[n][t].is_degenerate()))
            .map(|(&root, _)| root)
            .collect();
        roots.sort_unstable();
        for root in roots {
            let rep = tokens[n][*class_members[n][&root].iter().min().unwrap()].clone();
            let cell = set.add_cell(n, xs.name(rep.cell));
            if let Some(lbl) = xs.label(rep.cell) {
                set.set_label(cell, lbl);
            }
            new_cell[n].insert(root, cell);
        }
    }

    // Canonical simplex of a class, memoized; degenerate classes unwind to a
    // degeneracy of a lower class.
    fn canonical(
        n: usize,
        root: usize,
        tokens: &[Vec<Simplex>],
        index: &[HashMap<Simplex, usize>],
        uf: &mut [UnionFind],
        class_members: &[HashMap<usize, Vec<usize>>],
        new_cell: &[HashMap<usize, Cell>],
        memo: &mut HashMap<(usize, usize), Simplex>,
    ) -> Simplex {
        if let Some(s) = memo.get(&(n, root)) {
            return s.clone();
        }
        let result = if let Some(&cell) = new_cell[n].get(&root) {
            Simplex::nondegenerate(cell)
        } else {
            let members = &class_members[n][&root];
            let pick = members
                .iter()
                .map(|&t| &tokens[n][t])
                .filter(|s| s.is_degenerate())
                .max_by(|a, b| {
                    a.word.len().cmp(&b.word.len()).then_with(|| b.cmp(a))
                })
                .expect("degenerate class has a degenerate member")
                .clone();
            let inner_dim = pick.cell.dim;
            let inner_token = index[inner_dim][&Simplex::nondegenerate(pick.cell)];
            let inner_root = uf[inner_dim].find(inner_token);
            let inner = canonical(
                inner_dim,
                inner_root,
                tokens,
                index,
                uf,
                class_members,
                new_cell,
                memo,
            );
            Simplex { cell: inner.cell, word: pick.word.then(&inner.word) }
        };
        memo.insert((n, root), result.clone());
        result
    }

    let mut memo: HashMap<(usize, usize), Simplex> = HashMap::new();
    let mut faces_to_set: Vec<(Cell, Vec<Simplex>)> = Vec::new();
    for n in 1..=bound {
        let mut entries: Vec<(usize, Cell)> =
            new_cell[n].iter().map(|(&r, &c)| (r, c)).collect();
        entries.sort_by_key(|&(_, c)| c.idx);
        for (root, cell) in entries {
            let rep = tokens[n][*class_members[n][&root].iter().min().unwrap()].clone();
            let faces = (0..=n)
                .map(|i| {
                    let f = xs.face(&rep, i);
                    let fr = uf[n - 1].find(index[n - 1][&f]);
                    canonical(
                        n - 1,
                        fr,
                        &tokens,
                        &index,
                        &mut uf,
                        &class_members,
                        &new_cell,
                        &mut memo,
                    )
                })
                .collect();
            faces_to_set.push((cell, faces));
        }
    }
    for (cell, faces) in faces_to_set {
        set.set_faces(cell, faces);
    }

    let assignment = (0..=xs.max_dim().min(bound))
        .map(|d| {
            xs.cells(d)
                .map(|c| {
                    let root = uf[d].find(index[d][&Simplex::nondegenerate(c)]);
                    canonical(d, root, &tokens, &index, &mut uf, &class_members, &new_cell, &mut memo)
                })
                .collect()
        })
        .collect();
    let projection = SimplicialMap::new(xs.clone(), set.clone(), assignment);
    Ok(GlueResult { quotient: set, projection })
}

/// Disjoint union, with cell names suffixed per side and the two inclusions.
pub fn disjoint_union(
    xs: &SimplicialSet,
    ys: &SimplicialSet,
    suffix_x: &str,
    suffix_y: &str,
) -> (SimplicialSet, SimplicialMap, SimplicialMap) {
    let bound = xs.dimension_bound().max(ys.dimension_bound());
    let mut set = SimplicialSet::new(bound);
    let top_x = if xs.is_cell_empty() { 0 } else { xs.max_dim() };
    let top_y = if ys.is_cell_empty() { 0 } else { ys.max_dim() };
    for d in 0..=top_x.max(top_y) {
        for c in xs.cells(d) {
            set.add_cell(d, format!("{}{}", xs.name(c), suffix_x));
        }
        for c in ys.cells(d) {
            set.add_cell(d, format!("{}{}", ys.name(c), suffix_y));
        }
    }
    let remap_x = |c: Cell| -> Cell { c };
    let remap_y = |c: Cell, d: usize| -> Cell { Cell { dim: c.dim, idx: c.idx + xs.cell_count(d) } };
    for d in 1..=top_x.max(top_y) {
        for c in xs.cells(d) {
            let faces = xs
                .cell_faces(c)
                .iter()
                .map(|s| Simplex { cell: remap_x(s.cell), word: s.word.clone() })
                .collect();
            set.set_faces(remap_x(c), faces);
        }
        for c in ys.cells(d) {
            let faces = ys
                .cell_faces(c)
                .iter()
                .map(|s| Simplex { cell: remap_y(s.cell, s.cell.dim), word: s.word.clone() })
                .collect();
            set.set_faces(remap_y(c, d), faces);
        }
    }
    let asg_x = (0..=top_x)
        .map(|d| xs.cells(d).map(|c| Simplex::nondegenerate(remap_x(c))).collect())
        .collect();
    let asg_y = (0..=top_y)
        .map(|d| ys.cells(d).map(|c| Simplex::nondegenerate(remap_y(c, d))).collect())
        .collect();
    let ix = SimplicialMap::new(xs.clone(), set.clone(), asg_x);
    let iy = SimplicialMap::new(ys.clone(), set.clone(), asg_y);
    (set, ix, iy)
}

pub struct PushoutResult {
    pub set: SimplicialSet,
    pub from_x: SimplicialMap,
    pub from_y: SimplicialMap,
}

/// Cell-wise pushout of X <- A -> Y along legs that are injective on cells.
pub fn pushout(
    f: &SimplicialMap,
    g: &SimplicialMap,
    suffix_x: &str,
    suffix_y: &str,
) -> Result<PushoutResult, SimplicialError> {
    for leg in [f, g] {
        let mut seen = std::collections::HashSet::new();
        for d in 0..=if leg.source.is_cell_empty() { 0 } else { leg.source.max_dim() } {
            for c in leg.source.cells(d) {
                let img = leg.image_of_cell(c);
                if img.is_degenerate() || !seen.insert(img.cell) {
                    return Err(SimplicialError::NonInjectiveLeg);
                }
            }
        }
    }
    let (union, ix, iy) = disjoint_union(&f.target, &g.target, suffix_x, suffix_y);
    let mut idents = Vec::new();
    for d in 0..=if f.source.is_cell_empty() { 0 } else { f.source.max_dim() } {
        for a in f.source.cells(d) {
            let in_x = ix.apply(f.image_of_cell(a));
            let in_y = iy.apply(g.image_of_cell(a));
            idents.push((in_x, in_y));
        }
    }
    let glued = glue(&union, &idents)?;
    let from_x = compose(&ix, &glued.projection);
    let from_y = compose(&iy, &glued.projection);
    Ok(PushoutResult { set: glued.quotient, from_x, from_y })
}

/// g ∘ f.
pub fn compose(f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
    let assignment = f
        .assignment
        .iter()
        .map(|row| row.iter().map(|s| g.apply(s)).collect())
        .collect();
    SimplicialMap::new(f.source.clone(), g.target.clone(), assignment)
}

fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    let mut i = 0;
    loop {
        let cand = format!("{base}_{i}");
        if !taken(&cand) {
            return cand;
        }
        i += 1;
    }
}
