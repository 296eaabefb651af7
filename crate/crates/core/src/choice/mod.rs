//! Ex post stochastic choice: maximizer sets, normal cones, nonatomic
//! tie-breakers and the lexicographic random choice rule.

mod cone;
mod menu;
mod rcr;
mod tiebreaker;

pub use cone::{covers_unit, maximizer_set, normal_cone, tb_measure, ClosedInterval, IntervalUnion};
pub use menu::Menu;
pub use rcr::{monte_carlo_rcr, rcr, rcr_with, ChoiceDistribution, Probability};
pub use tiebreaker::{Piece, TieBreaker};
