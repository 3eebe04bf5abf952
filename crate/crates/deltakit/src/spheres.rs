//! The small sphere and disk models: a 2-cell 3-sphere, its 5-cell cone, and
//! the 8-cell 4-sphere obtained by gluing two copies of the cone along the
//! 3-sphere, together with the distinguished cells of the minus copy.

use crate::simplicial::{
    cone, glue, pushout, standard_simplex, Cell, DegWord, Simplex, SimplicialError,
    SimplicialMap, SimplicialSet,
};

/// Collapse every proper face of the 3-simplex to degeneracies of a point:
/// one vertex and one 3-cell remain.
pub fn build_s3_mod() -> Result<SimplicialSet, SimplicialError> {
    let delta3 = standard_simplex(3)?;
    let v0 = delta3.cell_by_name(0, "0").expect("vertex 0");
    let mut idents = Vec::new();
    for d in 0..=2usize {
        for c in delta3.cells(d) {
            idents.push((
                Simplex::nondegenerate(c),
                Simplex { cell: v0, word: DegWord::full_collapse(d) },
            ));
        }
    }
    let glued = glue(&delta3, &idents)?;
    Ok(glued.quotient)
}

/// Cone on the 3-sphere model: five nondegenerate cells, contractible.
pub fn build_d4_mod() -> Result<SimplicialSet, SimplicialError> {
    Ok(cone(&build_s3_mod()?)?.cone)
}

/// The distinguished data extracted from the minus copy of the 4-sphere
/// model.
pub struct SphereModelBundle {
    pub s3: SimplicialSet,
    pub d4_minus: SimplicialSet,
    pub d4_plus: SimplicialSet,
    pub s4: SimplicialSet,
    /// structural maps: s3 into each disk, each disk into the sphere
    pub s3_to_minus: SimplicialMap,
    pub s3_to_plus: SimplicialMap,
    pub minus_to_s4: SimplicialMap,
    pub plus_to_s4: SimplicialMap,
    /// the unique nondegenerate 4-cell of the minus copy
    pub sigma4: Cell,
    /// cone vertex of the minus copy (vertex 0 of sigma4)
    pub sigma0_0: Cell,
    /// the collapsed vertex (every other vertex of sigma4)
    pub sigma0_1: Cell,
    /// the edge of the minus copy from sigma0_0 to sigma0_1
    pub sigma1: Cell,
}

/// Glue two copies of the 4-disk model along the 3-sphere model.
pub fn build_s4_mod() -> Result<SphereModelBundle, SimplicialError> {
    let s3 = build_s3_mod()?;
    let minus = cone(&s3)?;
    let plus = cone(&s3)?;
    let po = pushout(&minus.inclusion, &plus.inclusion, "_m", "_p")?;
    let s4 = po.set;

    let cone_pt_minus = po.from_x.image_of_cell(minus.point).cell;
    let base_vertex = po
        .from_x
        .image_of_cell(Cell { dim: 0, idx: minus.point.idx + 1 })
        .cell;
    // the 4-cell over the top 3-cell of the s3 model, minus copy
    let top3 = Cell { dim: 3, idx: 0 };
    let sigma4 = po.from_x.image_of_cell(minus.over[3][top3.idx]).cell;
    let sigma1 = po.from_x.image_of_cell(minus.over[0][0]).cell;

    Ok(SphereModelBundle {
        s3: s3.clone(),
        d4_minus: minus.cone.clone(),
        d4_plus: plus.cone.clone(),
        s4,
        s3_to_minus: minus.inclusion,
        s3_to_plus: plus.inclusion,
        minus_to_s4: po.from_x,
        plus_to_s4: po.from_y,
        sigma4,
        sigma0_0: cone_pt_minus,
        sigma0_1: base_vertex,
        sigma1,
    })
}

impl SphereModelBundle {
    /// The distinguished cells (Σ⁴, Σ⁰₀, Σ⁰₁, Σ¹).
    pub fn distinguished_cells(&self) -> (Cell, Cell, Cell, Cell) {
        (self.sigma4, self.sigma0_0, self.sigma0_1, self.sigma1)
    }

    /// Vertex i of the distinguished 4-cell, resolved through iterated faces.
    pub fn sigma4_vertex(&self, i: usize) -> Cell {
        assert!(i <= 4);
        let mut s = Simplex::nondegenerate(self.sigma4);
        for j in (0..=4).rev() {
            if j != i {
                s = self.s4.face(&s, j);
            }
        }
        s.cell
    }

    /// The subcomplex spanned by the image of one disk: the cells of the
    /// other copy's interior are removed.
    pub fn closed_half(&self, minus: bool) -> SimplicialSet {
        let keep_map = if minus { &self.minus_to_s4 } else { &self.plus_to_s4 };
        let mut keep: Vec<Vec<bool>> = (0..=self.s4.max_dim())
            .map(|d| vec![false; self.s4.cell_count(d)])
            .collect();
        for d in 0..=keep_map.source.max_dim() {
            for c in keep_map.source.cells(d) {
                let img = keep_map.image_of_cell(c);
                if !img.is_degenerate() {
                    keep[img.cell.dim][img.cell.idx] = true;
                }
            }
        }
        let mut out = SimplicialSet::new(self.s4.dimension_bound());
        let mut remap: Vec<Vec<Option<Cell>>> = (0..=self.s4.max_dim())
            .map(|d| vec![None; self.s4.cell_count(d)])
            .collect();
        for d in 0..=self.s4.max_dim() {
            for c in self.s4.cells(d) {
                if keep[d][c.idx] {
                    remap[d][c.idx] = Some(out.add_cell(d, self.s4.name(c)));
                }
            }
        }
        for d in 1..=self.s4.max_dim() {
            for c in self.s4.cells(d) {
                let Some(new_cell) = remap[d][c.idx] else { continue };
                let faces = self
                    .s4
                    .cell_faces(c)
                    .iter()
                    .map(|f| Simplex {
                        cell: remap[f.cell.dim][f.cell.idx].expect("closed subcomplex"),
                        word: f.word.clone(),
                    })
                    .collect();
                out.set_faces(new_cell, faces);
            }
        }
        out
    }
}
