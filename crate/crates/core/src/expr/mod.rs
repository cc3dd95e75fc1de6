//! The chart expression language.
//!
//! Expressions are parsed once into an immutable [`Expr`] and can then be
//! evaluated over any [`Scalar`]: plain `f64`, the second-order [`Jet2`]
//! (value, gradient, Hessian) or a truncated multivariate [`TaylorSeries`]
//! of arbitrary order.
//!
//! Grammar, loosest to tightest:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          (right associative)
//! primary := number | ident | func '(' sum ')' | '(' sum ')'
//! func    := sin | cos | tan | exp | ln | sqrt | sinh | cosh | tanh | abs
//! ```

mod jet;
mod parser;
mod scalar;
mod taylor;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use jet::Jet2;
pub use scalar::Scalar;
pub use taylor::{MonomialTable, TaylorSeries};

/// Elementary functions accepted by the parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Sinh,
    Cosh,
    Tanh,
    Abs,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Real exponent; the base must be positive when evaluated.
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

/// Syntax tree node. Identifiers are resolved at parse time.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Num(f64),
    Coord(usize),
    Const(usize),
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    /// Integer power, detected syntactically and evaluated by repeated
    /// multiplication.
    PowI(Box<Node>, i32),
    Call(Func, Box<Node>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                *offset
            }
        }
    }
}

/// Evaluation left the domain of an operation.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{reason} in `{subexpr}` (argument {argument}) at point {point:?}")]
pub struct DomainError {
    pub reason: &'static str,
    pub subexpr: String,
    pub argument: f64,
    pub point: Vec<f64>,
}

/// A parsed expression over a fixed list of coordinates and named constants.
#[derive(Debug, Clone)]
pub struct Expr {
    root: Node,
    coords: Arc<[String]>,
    constants: Arc<[(String, f64)]>,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root && self.coords == other.coords && self.constants == other.constants
    }
}

/// Parses `source` with the given coordinate names and constants.
pub fn parse_expr(
    source: &str,
    coords: &[impl AsRef<str>],
    constants: &BTreeMap<String, f64>,
) -> Result<Expr, ParseError> {
    let coords: Arc<[String]> = coords.iter().map(|c| c.as_ref().to_string()).collect();
    let constants: Arc<[(String, f64)]> =
        constants.iter().map(|(k, v)| (k.clone(), *v)).collect();
    Expr::parse_shared(source, coords, constants)
}

impl Expr {
    /// Parses against pre-shared coordinate and constant tables; charts use
    /// this so that their many component expressions share one allocation.
    pub fn parse_shared(
        source: &str,
        coords: Arc<[String]>,
        constants: Arc<[(String, f64)]>,
    ) -> Result<Expr, ParseError> {
        if coords.is_empty() {
            return Err(ParseError::Syntax {
                offset: 0,
                message: "expressions need at least one coordinate".into(),
            });
        }
        let root = parser::parse(source, &coords, &constants)?;
        Ok(Expr { root, coords, constants })
    }

    /// The constant expression `value` over the given coordinates.
    pub fn constant(value: f64, coords: Arc<[String]>, constants: Arc<[(String, f64)]>) -> Expr {
        Expr { root: Node::Num(value), coords, constants }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn constants(&self) -> &[(String, f64)] {
        &self.constants
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// True when the tree is the literal `0`.
    pub fn is_zero_literal(&self) -> bool {
        matches!(self.root, Node::Num(v) if v == 0.0)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, DomainError> {
        self.check_dim(point.len());
        self.eval_with(point)
    }

    /// Value, gradient and Hessian by second-order Taylor arithmetic.
    pub fn eval_jet2(&self, point: &[f64]) -> Result<Jet2, DomainError> {
        self.check_dim(point.len());
        let n = point.len();
        let vars: Vec<Jet2> =
            point.iter().enumerate().map(|(i, &x)| Jet2::variable(n, i, x)).collect();
        self.eval_with(&vars)
    }

    /// Evaluates over an arbitrary scalar type. `inputs` are the coordinate
    /// values in declaration order.
    pub fn eval_with<S: Scalar>(&self, inputs: &[S]) -> Result<S, DomainError> {
        self.check_dim(inputs.len());
        scalar::eval_node(self, &self.root, inputs)
    }

    fn check_dim(&self, n: usize) {
        assert_eq!(
            n,
            self.coords.len(),
            "expression over {} coordinates evaluated at a {}-dimensional point",
            self.coords.len(),
            n
        );
    }

    pub(crate) fn render(&self, node: &Node) -> String {
        let mut s = String::new();
        self.write_node(&mut s, node).expect("writing to String");
        s
    }

    fn write_node(&self, f: &mut impl fmt::Write, node: &Node) -> fmt::Result {
        match node {
            Node::Num(v) => write!(f, "{v}"),
            Node::Coord(i) => write!(f, "{}", self.coords[*i]),
            Node::Const(i) => write!(f, "{}", self.constants[*i].0),
            Node::Neg(a) => {
                write!(f, "(-")?;
                self.write_node(f, a)?;
                write!(f, ")")
            }
            Node::Binary(op, a, b) => {
                write!(f, "(")?;
                self.write_node(f, a)?;
                write!(f, " {} ", op.symbol())?;
                self.write_node(f, b)?;
                write!(f, ")")
            }
            Node::PowI(a, k) => {
                write!(f, "(")?;
                self.write_node(f, a)?;
                if *k < 0 {
                    write!(f, "^(-{}))", k.unsigned_abs())
                } else {
                    write!(f, "^{k})")
                }
            }
            Node::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                self.write_node(f, a)?;
                write!(f, ")")
            }
        }
    }
}

/// Fully parenthesised; re-parsing the output yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_node(f, &self.root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn polynomial_value() {
        let e = parse_expr("x0^2 + 3", &["x0"], &BTreeMap::new()).unwrap();
        assert_eq!(e.eval_f64(&[2.0]).unwrap(), 7.0);
    }

    #[test]
    fn trig_at_zero() {
        let e = parse_expr("sin(x1)*cos(x1)", &["x0", "x1"], &BTreeMap::new()).unwrap();
        assert_eq!(e.eval_f64(&[0.3, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn constant_lookup() {
        let rs = 0.75;
        let e = parse_expr("1/(1 - rs/x1)", &["x0", "x1"], &consts(&[("rs", rs)])).unwrap();
        let v = e.eval_f64(&[0.0, 2.0 * rs]).unwrap();
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn bilinear_jet() {
        let e = parse_expr("x0*x1", &["x0", "x1"], &BTreeMap::new()).unwrap();
        let j = e.eval_jet2(&[3.0, 5.0]).unwrap();
        assert_eq!(j.value, 15.0);
        assert_eq!(j.grad, vec![5.0, 3.0]);
        assert_eq!(j.hess(0, 1), 1.0);
        assert_eq!(j.hess(1, 0), 1.0);
        assert_eq!(j.hess(0, 0), 0.0);
    }

    #[test]
    fn exp_jet_at_origin() {
        let e = parse_expr("exp(x0)", &["x0"], &BTreeMap::new()).unwrap();
        let j = e.eval_jet2(&[0.0]).unwrap();
        assert_eq!((j.value, j.grad[0], j.hess(0, 0)), (1.0, 1.0, 1.0));
    }

    #[test]
    fn sin_of_square_matches_finite_differences() {
        let e = parse_expr("sin(x0^2)", &["x0"], &BTreeMap::new()).unwrap();
        let x = 0.7;
        let h = 1e-4;
        let f = |x: f64| e.eval_f64(&[x]).unwrap();
        let fd_grad = (f(x + h) - f(x - h)) / (2.0 * h);
        let fd_hess = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        let j = e.eval_jet2(&[x]).unwrap();
        assert!((j.grad[0] - fd_grad).abs() / j.value.abs().max(1.0) < 1e-6);
        assert!((j.hess(0, 0) - fd_hess).abs() / j.value.abs().max(1.0) < 1e-4);
    }

    #[test]
    fn precedence_and_associativity() {
        let e = |s: &str| parse_expr(s, &["x"], &BTreeMap::new()).unwrap().eval_f64(&[2.0]).unwrap();
        assert_eq!(e("-x^2"), -4.0);
        assert_eq!(e("2^3^2"), 512.0);
        assert_eq!(e("1 - 2 - 3"), -4.0);
        assert_eq!(e("8/2/2"), 2.0);
        assert_eq!(e("2*x^-1"), 1.0);
        assert_eq!(e("(1+x)*3"), 9.0);
        assert_eq!(e("1.5e1 + .5"), 15.5);
    }

    #[test]
    fn integer_power_is_syntactic() {
        let e = parse_expr("x^3 + x^(-2) + x^2.5", &["x"], &BTreeMap::new()).unwrap();
        match e.root() {
            Node::Binary(BinOp::Add, lhs, rhs) => {
                assert!(matches!(**rhs, Node::Binary(BinOp::Pow, _, _)));
                match &**lhs {
                    Node::Binary(BinOp::Add, a, b) => {
                        assert!(matches!(**a, Node::PowI(_, 3)));
                        assert!(matches!(**b, Node::PowI(_, -2)));
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
            other => panic!("unexpected {other:?}"),
        }
        // negative base is fine for an integer exponent
        assert_eq!(
            parse_expr("x^3", &["x"], &BTreeMap::new()).unwrap().eval_f64(&[-2.0]).unwrap(),
            -8.0
        );
        assert!(parse_expr("x^2.5", &["x"], &BTreeMap::new()).unwrap().eval_f64(&[-2.0]).is_err());
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let err = parse_expr("x0 + * 2", &["x0"], &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { offset: 5, .. }), "{err:?}");
        let err = parse_expr("sin x0", &["x0"], &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { offset: 4, .. }), "{err:?}");
        let err = parse_expr("(x0 + 1", &["x0"], &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { offset: 7, .. }), "{err:?}");
        assert!(parse_expr("", &["x0"], &BTreeMap::new()).is_err());
        assert!(parse_expr("x0 2", &["x0"], &BTreeMap::new()).is_err());
    }

    #[test]
    fn unknown_identifier_is_named() {
        let err = parse_expr("x0 + foo", &["x0"], &BTreeMap::new()).unwrap_err();
        assert_eq!(err, ParseError::UnknownIdentifier { name: "foo".into(), offset: 5 });
        // unknown function names are unknown identifiers too
        let err = parse_expr("erf(x0)", &["x0"], &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, ParseError::UnknownIdentifier { ref name, .. } if name == "erf"));
    }

    #[test]
    fn domain_errors() {
        let p = |s: &str| parse_expr(s, &["x"], &BTreeMap::new()).unwrap();
        let err = p("1 + ln(x - 1)").eval_f64(&[0.5]).unwrap_err();
        assert_eq!(err.reason, "logarithm of non-positive value");
        assert_eq!(err.subexpr, "ln((x - 1))");
        assert_eq!(err.point, vec![0.5]);
        assert!(p("1/(x - 1)").eval_f64(&[1.0]).is_err());
        assert!(p("sqrt(x)").eval_f64(&[-1.0]).is_err());
        assert!(p("sqrt(x)").eval_f64(&[0.0]).is_ok());
        assert!(p("sqrt(x)").eval_jet2(&[0.0]).is_err());
        assert!(p("x^(-1)").eval_f64(&[0.0]).is_err());
    }

    #[test]
    fn display_round_trips() {
        let c = consts(&[("rs", 2.0)]);
        let e = parse_expr("-x^2/(1 - rs/x) + sin(x)^-3 * 2^x - -1e-3", &["x"], &c).unwrap();
        let again = parse_expr(&e.to_string(), &["x"], &c).unwrap();
        assert_eq!(e, again);
    }
}
