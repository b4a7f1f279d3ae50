//! Text syntax for ξ expressions and measure expressions.

mod cursor;
mod measure_expr;
mod xi_expr;

pub use measure_expr::{
    parse_measure_ast, parse_measure_expr, EvaluationError, MeasureExpr, MeasureExprError,
};
pub use xi_expr::parse_xi_expr;

use std::fmt;

use thiserror::Error;

/// Syntax error: byte offset into the input and the tokens that would
/// have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: expected ", self.position)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}"),
            many => write!(f, "one of {}", many.join(", ")),
        }
    }
}

impl ParseError {
    /// Caret diagnostic under the offending column.
    pub fn render(&self, input: &str) -> String {
        let col = input[..self.position.min(input.len())].chars().count();
        format!("{input}\n{}^ {self}", " ".repeat(col))
    }
}
