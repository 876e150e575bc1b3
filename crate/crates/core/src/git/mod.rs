//! GIT stability of points in a product of Grassmannians under `SL(V)`,
//! via the Hilbert-Mumford criterion reduced to subspaces of `V`.

mod theta;
mod oneps;
mod point;
pub mod strategy;

pub use theta::{theta_verdict, theta_alpha_eval, ThetaEntry, ThetaVerdict, ThetaAlphaInput};
pub use oneps::{mu_oneps, OnePs};
pub use point::{AnyGrassPoint, GrassPoint, Linearization};
pub use strategy::{hm_check, strategies, strategy, HmStrategy, HmVerdict, SearchOptions, SubspaceWitness};
