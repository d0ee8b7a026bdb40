//! Orbit types of the `SO(3)` actions on `S^3` bundles over `S^4`, the group
//! diagrams behind them, and searches for almost free actions.

mod diagram;
mod dihedral;
mod orbit;
mod table;

pub use diagram::{
    check_principal_freeness, validate_diagram, DiagramKind, GroupDiagram, QElem, Subgroup, Unit,
};
pub use dihedral::{
    binary_dihedral_lift, count_image, dihedral_involutions, BinaryDihedral, ImageCount,
};
pub use orbit::{
    dihedral_orders, from_orders, is_almost_free, oliver_obstruction, orbit_types, LiftedType,
    OliverVerdict, OrbitType, OrbitTypeSet,
};
pub use table::{
    find_almost_free_lift, hopf_family, hopf_family_orders, isotropy_table, mod56_family,
    render_isotropy_table, table_params, table_q, LClass, Lift, Mod56Member, TableCell, TableEntry,
    TableMember,
};
