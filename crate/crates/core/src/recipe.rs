//! Flat instruction streams ("recipes") compiled from factorisation trees.
//!
//! The machine works on a value array. Slots `0..m` hold the point
//! coordinates; every other slot is a temporary. Coefficients are loaded by
//! index at evaluation time, so one recipe evaluates every polynomial that
//! shares its exponent matrix.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::horner::{HornerFactorisation, HornerNode};
use crate::poly::ipow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instruction {
    /// `slot[dst] = coefficients[coeff]`
    LoadCoeff { dst: usize, coeff: usize },
    /// `slot[dst] = slot[a] * slot[b]`
    Mul { dst: usize, a: usize, b: usize },
    /// `slot[dst] = slot[a] + slot[b]`
    Add { dst: usize, a: usize, b: usize },
    /// `slot[dst] = slot[base] ^ exponent`, exponent >= 2
    Pow { dst: usize, base: usize, exponent: u32 },
}

impl Instruction {
    pub fn dst(&self) -> usize {
        match *self {
            Instruction::LoadCoeff { dst, .. }
            | Instruction::Mul { dst, .. }
            | Instruction::Add { dst, .. }
            | Instruction::Pow { dst, .. } => dst,
        }
    }

    fn reads(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Instruction::LoadCoeff { .. } => (None, None),
            Instruction::Mul { a, b, .. } | Instruction::Add { a, b, .. } => (Some(a), Some(b)),
            Instruction::Pow { base, .. } => (Some(base), None),
        };
        a.into_iter().chain(b)
    }

    /// Whether the instruction counts as an arithmetic operation.
    pub fn is_counted(&self) -> bool {
        !matches!(self, Instruction::LoadCoeff { .. })
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instruction::LoadCoeff { dst, coeff } => write!(f, "LC {dst} {coeff}"),
            Instruction::Mul { dst, a, b } => write!(f, "MUL {dst} {a} {b}"),
            Instruction::Add { dst, a, b } => write!(f, "ADD {dst} {a} {b}"),
            Instruction::Pow { dst, base, exponent } => write!(f, "POW {dst} {base} {exponent}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse instruction `{line}`")]
pub struct ParseInstructionError {
    pub line: String,
}

impl FromStr for Instruction {
    type Err = ParseInstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseInstructionError { line: s.to_owned() };
        let mut parts = s.split_whitespace();
        let op = parts.next().ok_or_else(err)?;
        let args: Vec<usize> = parts
            .map(|p| p.parse().map_err(|_| err()))
            .collect::<Result<_, _>>()?;
        match (op, args.as_slice()) {
            ("LC", &[dst, coeff]) => Ok(Instruction::LoadCoeff { dst, coeff }),
            ("MUL", &[dst, a, b]) => Ok(Instruction::Mul { dst, a, b }),
            ("ADD", &[dst, a, b]) => Ok(Instruction::Add { dst, a, b }),
            ("POW", &[dst, base, e]) => Ok(Instruction::Pow {
                dst,
                base,
                exponent: u32::try_from(e).map_err(|_| err())?,
            }),
            _ => Err(err()),
        }
    }
}

/// Parses a dump listing, one instruction per line. Blank lines are skipped.
pub fn parse_listing(text: &str) -> Result<Vec<Instruction>, ParseInstructionError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipeError {
    #[error("recipe expects {expected} coefficients, got {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("point has {found} coordinates, recipe has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ReadBeforeWrite { pc: usize, slot: usize },
    SlotOutOfBounds { pc: usize, slot: usize },
    PowExponent { pc: usize, exponent: u32 },
    CoeffIndexOutOfRange { pc: usize, coeff: usize },
    LoadCoeffCount { expected: usize, found: usize },
    SlotCountTooSmall { slot_count: usize, dimension: usize },
    ResultSlot { slot: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::ReadBeforeWrite { pc, slot } => {
                write!(f, "instruction {pc} reads slot {slot} before it is written")
            }
            Violation::SlotOutOfBounds { pc, slot } => {
                write!(f, "instruction {pc} uses slot {slot} outside the value array")
            }
            Violation::PowExponent { pc, exponent } => {
                write!(f, "instruction {pc} has POW exponent {exponent} < 2")
            }
            Violation::CoeffIndexOutOfRange { pc, coeff } => {
                write!(f, "instruction {pc} loads missing coefficient {coeff}")
            }
            Violation::LoadCoeffCount { expected, found } => {
                write!(f, "{found} LC instructions for {expected} coefficients")
            }
            Violation::SlotCountTooSmall {
                slot_count,
                dimension,
            } => write!(f, "slot count {slot_count} leaves no temporaries for dimension {dimension}"),
            Violation::ResultSlot { slot } => write!(f, "result slot {slot} is never written"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    instructions: Vec<Instruction>,
    dimension: usize,
    num_coefficients: usize,
    slot_count: usize,
    result_slot: usize,
}

impl Recipe {
    /// Assembles a recipe without checking it. Run [`Recipe::validate`] before
    /// evaluating anything not produced by [`compile`]; evaluation panics on
    /// out-of-bounds slots or coefficient indices.
    pub fn from_parts(
        instructions: Vec<Instruction>,
        dimension: usize,
        num_coefficients: usize,
        slot_count: usize,
        result_slot: usize,
    ) -> Self {
        Recipe {
            instructions,
            dimension,
            num_coefficients,
            slot_count,
            result_slot,
        }
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_coefficients(&self) -> usize {
        self.num_coefficients
    }

    pub fn slot_count(&self) -> usize {
        self.slot_count
    }

    pub fn result_slot(&self) -> usize {
        self.result_slot
    }

    /// Number of MUL, ADD and POW instructions.
    pub fn op_count(&self) -> usize {
        self.instructions.iter().filter(|i| i.is_counted()).count()
    }

    /// Line-oriented listing, one instruction per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for instr in &self.instructions {
            out.push_str(&instr.to_string());
            out.push('\n');
        }
        out
    }

    /// Structural checks; an empty list means the recipe is safe to evaluate.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        if self.slot_count <= self.dimension {
            violations.push(Violation::SlotCountTooSmall {
                slot_count: self.slot_count,
                dimension: self.dimension,
            });
        }
        let mut written = vec![false; self.slot_count];
        for w in written.iter_mut().take(self.dimension) {
            *w = true;
        }
        let mut loads = 0;
        for (pc, instr) in self.instructions.iter().enumerate() {
            for slot in instr.reads() {
                match written.get(slot) {
                    None => violations.push(Violation::SlotOutOfBounds { pc, slot }),
                    Some(false) => violations.push(Violation::ReadBeforeWrite { pc, slot }),
                    Some(true) => {}
                }
            }
            match *instr {
                Instruction::Pow { exponent, .. } if exponent < 2 => {
                    violations.push(Violation::PowExponent { pc, exponent });
                }
                Instruction::LoadCoeff { coeff, .. } => {
                    loads += 1;
                    if coeff >= self.num_coefficients {
                        violations.push(Violation::CoeffIndexOutOfRange { pc, coeff });
                    }
                }
                _ => {}
            }
            let dst = instr.dst();
            match written.get_mut(dst) {
                Some(w) => *w = true,
                None => violations.push(Violation::SlotOutOfBounds { pc, slot: dst }),
            }
        }
        if loads != self.num_coefficients {
            violations.push(Violation::LoadCoeffCount {
                expected: self.num_coefficients,
                found: loads,
            });
        }
        if !written.get(self.result_slot).copied().unwrap_or(false) {
            violations.push(Violation::ResultSlot {
                slot: self.result_slot,
            });
        }
        violations
    }

    /// Evaluates the recipe with a fresh scratch array.
    pub fn eval(&self, coefficients: &[f64], x: &[f64]) -> Result<f64, RecipeError> {
        let mut scratch = vec![0.0; self.slot_count];
        self.eval_with(&mut scratch, coefficients, x)
    }

    fn check_args(&self, coefficients: &[f64], x: &[f64]) -> Result<(), RecipeError> {
        if coefficients.len() != self.num_coefficients {
            return Err(RecipeError::CoefficientCount {
                expected: self.num_coefficients,
                found: coefficients.len(),
            });
        }
        if x.len() != self.dimension {
            return Err(RecipeError::DimensionMismatch {
                expected: self.dimension,
                found: x.len(),
            });
        }
        Ok(())
    }

    fn eval_with(
        &self,
        slots: &mut [f64],
        coefficients: &[f64],
        x: &[f64],
    ) -> Result<f64, RecipeError> {
        self.check_args(coefficients, x)?;
        slots[..self.dimension].copy_from_slice(x);
        for instr in &self.instructions {
            match *instr {
                Instruction::LoadCoeff { dst, coeff } => slots[dst] = coefficients[coeff],
                Instruction::Mul { dst, a, b } => slots[dst] = slots[a] * slots[b],
                Instruction::Add { dst, a, b } => slots[dst] = slots[a] + slots[b],
                Instruction::Pow { dst, base, exponent } => slots[dst] = ipow(slots[base], exponent),
            }
        }
        Ok(slots[self.result_slot])
    }

    /// Reusable evaluation context holding its own scratch storage.
    pub fn evaluator(&self) -> Evaluator<'_> {
        Evaluator {
            recipe: self,
            scratch: vec![0.0; self.slot_count],
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// Pre-allocated scratch for repeated evaluation of one recipe.
pub struct Evaluator<'r> {
    recipe: &'r Recipe,
    scratch: Vec<f64>,
}

impl Evaluator<'_> {
    pub fn eval(&mut self, coefficients: &[f64], x: &[f64]) -> Result<f64, RecipeError> {
        self.recipe.eval_with(&mut self.scratch, coefficients, x)
    }
}

/// Compiles a factorisation tree by post-order traversal.
///
/// Temporaries are handed out from a free list and returned as soon as their
/// value has been consumed, so the value array holds the point plus at most
/// the tree's maximal number of simultaneously live values.
pub fn compile(f: &HornerFactorisation) -> Recipe {
    let mut c = Compiler {
        instructions: Vec::with_capacity(f.num_coefficients() + f.op_count()),
        free: Vec::new(),
        next_slot: f.dimension(),
    };
    let result_slot = c.node(f.root());
    Recipe {
        instructions: c.instructions,
        dimension: f.dimension(),
        num_coefficients: f.num_coefficients(),
        slot_count: c.next_slot,
        result_slot,
    }
}

struct Compiler {
    instructions: Vec<Instruction>,
    free: Vec<usize>,
    next_slot: usize,
}

impl Compiler {
    fn alloc(&mut self) -> usize {
        self.free.pop().unwrap_or_else(|| {
            self.next_slot += 1;
            self.next_slot - 1
        })
    }

    fn release(&mut self, slot: usize) {
        self.free.push(slot);
    }

    fn emit(&mut self, instr: Instruction) {
        self.instructions.push(instr);
    }

    fn node(&mut self, node: &HornerNode) -> usize {
        match node {
            HornerNode::Leaf {
                coeff_index,
                exponents,
            } => {
                let t = self.alloc();
                self.emit(Instruction::LoadCoeff {
                    dst: t,
                    coeff: *coeff_index,
                });
                for (var, &e) in exponents.entries().iter().enumerate() {
                    match e {
                        0 => {}
                        1 => self.emit(Instruction::Mul { dst: t, a: t, b: var }),
                        _ => {
                            let p = self.alloc();
                            self.emit(Instruction::Pow {
                                dst: p,
                                base: var,
                                exponent: e,
                            });
                            self.emit(Instruction::Mul { dst: t, a: t, b: p });
                            self.release(p);
                        }
                    }
                }
                t
            }
            HornerNode::Branch {
                factor_var,
                factored,
                remainder,
            } => {
                let t = self.node(factored);
                self.emit(Instruction::Mul {
                    dst: t,
                    a: *factor_var,
                    b: t,
                });
                if let Some(r) = remainder {
                    let s = self.node(r);
                    self.emit(Instruction::Add { dst: t, a: t, b: s });
                    self.release(s);
                }
                t
            }
        }
    }
}
