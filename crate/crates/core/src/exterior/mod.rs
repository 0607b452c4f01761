//! Tensor powers of V, braided permutation lifts, antisymmetrizers,
//! shuffle operators and the exterior algebra of invariant forms.

pub mod antisym;
pub mod forms;
pub mod linalg;
pub mod linop;
pub mod perm;
pub mod tensor;

pub use antisym::{antisymmetrizer, shuffle_operator, spectral_report, SpectralReport};
pub use forms::{degree_data, form_coordinates, wedge, Form, FormError};
pub use linop::LinOp;
pub use perm::{lift_permutation, perm_word};
pub use tensor::Tensor;
