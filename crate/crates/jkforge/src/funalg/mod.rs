//! Simplex function algebras, powers over finite complexes, path and loop
//! objects and the cube-based relative kernels.

pub mod cubes;
pub mod loops;
pub mod power;
pub mod simplex;

pub use cubes::{
    coordinate_t, custom_object, upsilon_at,
    based_path_object, canonical_t, cube_map, end_evaluation, end_inclusion, lambda_star,
    loop_like_extension, module_mul, omega_object, permute_cube, relative_kernel, splitting_pair,
    tilde_object, upsilon, CubeObject, LoopLikeExtension,
};
pub use loops::{loop_algebra, loop_extension, path_algebra, LoopExtension};
pub use power::{power_coeff_map, relative_power, Power, PowerAlgebra};
pub use simplex::SimplexAlgebra;
