//! Certified computations for sesquilinear braid group representations
//! specialized at Salem numbers.

pub mod ball;
pub mod certify;
pub mod forms;
pub mod reps;
pub mod ring;
pub mod salem;
pub mod young;
