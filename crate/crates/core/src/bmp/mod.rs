//! Exact solvers for the full problem, where the placement is chosen too.

mod budget;
mod consecutive;
mod grids;
mod oracle;
mod template;

pub use budget::{check_enveloped, solve_bmp_budget, solve_bmp_budget_with, BudgetCase, BudgetOutcome};
pub use consecutive::{is_consecutive, make_consecutive};
pub use oracle::{solve_bmp_oracle, solve_bmp_oracle_with};
pub use template::{solve_bmp_template, solve_bmp_template_with, MultiplicityFunction, Template, TemplateOutcome};
