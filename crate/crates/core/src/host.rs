//! A common interface over the structures that host edge paths and
//! relation cells: the infinite slope models and the finite type move
//! graphs. The homotopy machinery is written once against this trait.

use crate::farey::{FareyModel, Slope};
use crate::pantsgraph::TypeMoveGraph;
use crate::relations::{validate_slope_cell, validate_type_cell, CellError, RelationInstance};

/// Something an edge path can live in: vertices, move edges, and relation
/// cells with host-checked validity.
pub trait Host {
    type Vertex: Clone + Ord + std::fmt::Debug + std::fmt::Display;

    fn has_vertex(&self, v: &Self::Vertex) -> bool;

    fn has_edge(&self, a: &Self::Vertex, b: &Self::Vertex) -> bool;

    /// Recomputes whether `cell` is a genuine relation cell of this host.
    fn validate_cell(&self, cell: &RelationInstance<Self::Vertex>) -> Result<(), CellError>;
}

impl Host for FareyModel {
    type Vertex = Slope;

    fn has_vertex(&self, _v: &Slope) -> bool {
        true // every slope is a decomposition curve here
    }

    fn has_edge(&self, a: &Slope, b: &Slope) -> bool {
        FareyModel::has_edge(self, a, b)
    }

    fn validate_cell(&self, cell: &RelationInstance<Slope>) -> Result<(), CellError> {
        validate_slope_cell(self.kind, cell)
    }
}

impl Host for TypeMoveGraph {
    type Vertex = usize;

    fn has_vertex(&self, v: &usize) -> bool {
        *v < self.vertex_count()
    }

    fn has_edge(&self, a: &usize, b: &usize) -> bool {
        TypeMoveGraph::has_edge(self, *a, *b)
    }

    fn validate_cell(&self, cell: &RelationInstance<usize>) -> Result<(), CellError> {
        validate_type_cell(self, cell)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::ModelKind;
    use crate::pantsgraph::build_move_graph;
    use crate::relations::RelationKind;
    use crate::surface::SurfaceType;

    #[test]
    fn slope_model_host_views() {
        let model = FareyModel::new(ModelKind::A);
        let zero: Slope = "0/1".parse().unwrap();
        let inf: Slope = "1/0".parse().unwrap();
        assert!(model.has_vertex(&zero));
        assert!(Host::has_edge(&model, &zero, &inf));
        let tri = RelationInstance::new(
            RelationKind::R3A,
            vec![zero, inf, "1/1".parse().unwrap()],
        );
        assert!(model.validate_cell(&tri).is_ok());
    }

    #[test]
    fn type_graph_host_views() {
        let mg = build_move_graph(SurfaceType::new(0, 4).unwrap()).unwrap();
        assert!(mg.has_vertex(&2));
        assert!(!mg.has_vertex(&3));
        assert!(Host::has_edge(&mg, &0, &1));
        let tri = RelationInstance::new(RelationKind::R3A, vec![0, 1, 2]);
        assert!(mg.validate_cell(&tri).is_ok());
    }
}
