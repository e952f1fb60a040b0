//! Canalizing-layer decomposition.
//!
//! Every function has a unique normal form
//!
//! ```text
//! f = b_1 if some layer-1 literal holds,
//!     else b_2 if some layer-2 literal holds,
//!     ...
//!     else core
//! ```
//!
//! with strictly alternating outputs `b_{i+1} = !b_i` and a core that is
//! either non-canalizing and non-constant, or the constant `!b_r`. When the
//! core is constant and there are at least two layers, the last layer holds
//! at least two variables. The one remaining ambiguity (`f` a single literal,
//! which canalizes in both directions) is resolved by reporting input `0`.

use std::fmt;

use thiserror::Error;

use super::{TruthTable, TruthTableError};

/// A canalizing variable together with its canalizing input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanalizingLiteral {
    pub var: usize,
    pub input: bool,
    /// Set only when the function is a literal of `var`.
    pub bidirectional: bool,
}

impl CanalizingLiteral {
    pub fn new(var: usize, input: bool) -> Self {
        CanalizingLiteral {
            var,
            input,
            bidirectional: false,
        }
    }
}

/// The remainder once every conditionally canalizing variable avoids its
/// canalizing input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Core {
    Constant(bool),
    /// A non-constant, non-canalizing function of `vars` (ascending original
    /// indices); every listed variable is essential in `table`.
    Function { vars: Vec<usize>, table: TruthTable },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LayerDecomposition {
    pub n: usize,
    pub essential: Vec<usize>,
    pub layers: Vec<Vec<CanalizingLiteral>>,
    pub outputs: Vec<bool>,
    pub core: Core,
}

/// The `(m, k, r)` indices of a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Classification {
    /// Number of essential variables.
    pub m: usize,
    /// Canalizing depth.
    pub k: usize,
    /// Number of canalizing layers.
    pub r: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("layer {0} is empty")]
    EmptyLayer(usize),
    #[error("{layers} layers but {outputs} canalized outputs")]
    OutputCount { layers: usize, outputs: usize },
    #[error("canalized outputs of layers {0} and {} do not alternate", .0 + 1)]
    NonAlternatingOutputs(usize),
    #[error("variable x{} appears more than once", .0 + 1)]
    DuplicateVariable(usize),
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("core function is canalizing in x{}", .0 + 1)]
    CanalizingCore(usize),
    #[error("core function is constant; use a constant core instead")]
    ConstantCoreFunction,
    #[error("core function does not depend on x{}", .0 + 1)]
    DegenerateCore(usize),
    #[error("core has {table} inputs but lists {vars} variables")]
    CoreArity { table: usize, vars: usize },
    #[error("constant core equals the last canalized output")]
    CoreEqualsLastOutput,
    #[error("constant core after several layers requires at least two variables in the last layer")]
    SingletonLastLayer,
    #[error("essential set does not match the variables of the layers and core")]
    EssentialMismatch,
    #[error(transparent)]
    Table(#[from] TruthTableError),
}

impl LayerDecomposition {
    /// Canalizing depth `k`.
    pub fn depth(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn classification(&self) -> Classification {
        Classification {
            m: self.essential.len(),
            k: self.depth(),
            r: self.num_layers(),
        }
    }

    /// Whether `f` is nested canalizing on its essential variables.
    pub fn is_nested_canalizing(&self) -> bool {
        matches!(self.core, Core::Constant(_)) && !self.layers.is_empty()
    }

    /// Checks every structural requirement of the normal form.
    pub fn validate(&self) -> Result<(), DecompositionError> {
        if self.outputs.len() != self.layers.len() {
            return Err(DecompositionError::OutputCount {
                layers: self.layers.len(),
                outputs: self.outputs.len(),
            });
        }
        let mut seen = vec![false; self.n];
        let mut mark = |v: usize| -> Result<(), DecompositionError> {
            let slot = seen
                .get_mut(v)
                .ok_or(DecompositionError::VariableOutOfRange(v))?;
            if *slot {
                return Err(DecompositionError::DuplicateVariable(v));
            }
            *slot = true;
            Ok(())
        };
        for (i, layer) in self.layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(DecompositionError::EmptyLayer(i + 1));
            }
            for lit in layer {
                mark(lit.var)?;
            }
        }
        for (i, pair) in self.outputs.windows(2).enumerate() {
            if pair[0] == pair[1] {
                return Err(DecompositionError::NonAlternatingOutputs(i + 1));
            }
        }
        match &self.core {
            Core::Constant(c) => {
                if let Some(&last) = self.outputs.last() {
                    if *c == last {
                        return Err(DecompositionError::CoreEqualsLastOutput);
                    }
                }
                if self.layers.len() >= 2 && self.layers.last().map_or(0, Vec::len) < 2 {
                    return Err(DecompositionError::SingletonLastLayer);
                }
            }
            Core::Function { vars, table } => {
                if table.arity() != vars.len() {
                    return Err(DecompositionError::CoreArity {
                        table: table.arity(),
                        vars: vars.len(),
                    });
                }
                for &v in vars {
                    mark(v)?;
                }
                if table.constant_value().is_some() {
                    return Err(DecompositionError::ConstantCoreFunction);
                }
                for (local, &v) in vars.iter().enumerate() {
                    if !table.depends_on_unchecked(local) {
                        return Err(DecompositionError::DegenerateCore(v));
                    }
                    if table.canalizing_unchecked(local).is_some() {
                        return Err(DecompositionError::CanalizingCore(v));
                    }
                }
                if vars.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(DecompositionError::EssentialMismatch);
                }
            }
        }
        let used: Vec<usize> = (0..self.n).filter(|&v| seen[v]).collect();
        if used != self.essential {
            return Err(DecompositionError::EssentialMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for LayerDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.classification();
        write!(f, "m={} k={} r={}", c.m, c.k, c.r)?;
        if c.k == 0 {
            f.write_str(" (non-canalizing)")?;
        }
        for (i, (layer, &b)) in self.layers.iter().zip(&self.outputs).enumerate() {
            write!(f, "\nlayer {}:", i + 1)?;
            for (j, lit) in layer.iter().enumerate() {
                let sep = if j == 0 { " " } else { ", " };
                write!(
                    f,
                    "{sep}x{} (a={} -> b={})",
                    lit.var + 1,
                    u8::from(lit.input),
                    u8::from(b)
                )?;
                if lit.bidirectional {
                    f.write_str(", bidirectional")?;
                }
            }
        }
        match &self.core {
            Core::Constant(c) => write!(f, "\ncore: constant {}", u8::from(*c))?,
            Core::Function { vars, table } => {
                let names: Vec<String> = vars.iter().map(|v| format!("x{}", v + 1)).collect();
                write!(f, "\ncore: {} on {{{}}}", table, names.join(", "))?;
            }
        }
        let names: Vec<String> = self.essential.iter().map(|v| format!("x{}", v + 1)).collect();
        write!(f, "\nessential: {{{}}}", names.join(", "))
    }
}

/// Peels canalizing layers off `f` until a constant or non-canalizing
/// remainder is reached.
///
/// Panics if two simultaneously canalizing variables disagree on their
/// canalized output, or if consecutive layers fail to alternate; both are
/// impossible for a correct implementation.
pub fn decompose(f: &TruthTable) -> LayerDecomposition {
    let essential = f.essential_variables();
    let mut current = f.clone();
    // original index of each variable of `current`
    let mut vars: Vec<usize> = (0..f.arity()).collect();
    let mut layers = Vec::new();
    let mut outputs: Vec<bool> = Vec::new();

    let core = loop {
        if let Some(c) = current.constant_value() {
            if let Some(&last) = outputs.last() {
                assert_ne!(c, last, "constant core equals the last canalized output");
            }
            break Core::Constant(c);
        }
        let mut layer = Vec::new();
        let mut local_vars = Vec::new();
        let mut output = None;
        for (local, &var) in vars.iter().enumerate() {
            if let Some(c) = current.canalizing_unchecked(local) {
                match output {
                    None => output = Some(c.output),
                    Some(b) => assert_eq!(
                        b, c.output,
                        "simultaneously canalizing variables disagree on the canalized output"
                    ),
                }
                layer.push(CanalizingLiteral {
                    var,
                    input: c.input,
                    bidirectional: c.bidirectional,
                });
                local_vars.push((local, c.input));
            }
        }
        let Some(b) = output else {
            let keep: Vec<usize> = (0..vars.len())
                .filter(|&l| current.depends_on_unchecked(l))
                .collect();
            let mut table = current;
            for l in (0..vars.len()).rev() {
                if !keep.contains(&l) {
                    table = table.restrict_unchecked(l, false);
                }
            }
            break Core::Function {
                vars: keep.iter().map(|&l| vars[l]).collect(),
                table,
            };
        };
        if let Some(&last) = outputs.last() {
            assert_ne!(b, last, "canalized outputs of consecutive layers must alternate");
        }
        for &(local, input) in local_vars.iter().rev() {
            current = current.restrict_unchecked(local, !input);
            vars.remove(local);
        }
        layers.push(layer);
        outputs.push(b);
    };

    LayerDecomposition {
        n: f.arity(),
        essential,
        layers,
        outputs,
        core,
    }
}

/// Evaluates the nested normal form back into a truth table.
pub fn reconstruct(d: &LayerDecomposition) -> Result<TruthTable, DecompositionError> {
    d.validate()?;
    let mut acc = match &d.core {
        Core::Constant(c) => TruthTable::constant(d.n, *c)?,
        Core::Function { vars, table } => table.embed(d.n, vars)?,
    };
    for (layer, &b) in d.layers.iter().zip(&d.outputs).rev() {
        let mut hit = vec![0u64; acc.words.len()];
        for lit in layer {
            let x = TruthTable::variable(d.n, lit.var)?;
            let lit_table = if lit.input { x } else { !&x };
            for (h, w) in hit.iter_mut().zip(&lit_table.words) {
                *h |= w;
            }
        }
        for (a, h) in acc.words.iter_mut().zip(&hit) {
            *a = if b { *a | h } else { *a & !h };
        }
    }
    Ok(acc)
}

/// `(m, k, r)` of `f`; constants give `(0, 0, 0)`.
pub fn classify(f: &TruthTable) -> Classification {
    decompose(f).classification()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: usize, v: usize) -> TruthTable {
        TruthTable::variable(n, v).unwrap()
    }

    #[test]
    fn worked_example_has_one_layer_and_xor_core() {
        let x = |v| var(4, v);
        let f = &(&x(0) | &!&x(1)) | &(&x(2) ^ &x(3));
        let d = decompose(&f);
        assert_eq!(d.depth(), 2);
        assert_eq!(d.layers, vec![vec![
            CanalizingLiteral::new(0, true),
            CanalizingLiteral::new(1, false),
        ]]);
        assert_eq!(d.outputs, vec![true]);
        let xor = TruthTable::parse(2, "0110").unwrap();
        assert_eq!(d.core, Core::Function { vars: vec![2, 3], table: xor });
        assert_eq!(classify(&f), Classification { m: 4, k: 2, r: 1 });
        assert_eq!(reconstruct(&d).unwrap(), f);
    }

    #[test]
    fn reconstruct_worked_example_from_parts() {
        let d = LayerDecomposition {
            n: 4,
            essential: vec![0, 1, 2, 3],
            layers: vec![vec![CanalizingLiteral::new(0, true), CanalizingLiteral::new(1, false)]],
            outputs: vec![true],
            core: Core::Function {
                vars: vec![2, 3],
                table: TruthTable::parse(2, "0110").unwrap(),
            },
        };
        let x = |v| var(4, v);
        assert_eq!(reconstruct(&d).unwrap(), &(&x(0) | &!&x(1)) | &(&x(2) ^ &x(3)));
    }

    #[test]
    fn conjunction_is_one_layer_with_constant_core() {
        let f = &var(2, 0) & &var(2, 1);
        let d = decompose(&f);
        assert_eq!(d.layer_sizes(), vec![2]);
        assert_eq!(d.outputs, vec![false]);
        assert_eq!(d.core, Core::Constant(true));
        assert_eq!(reconstruct(&d).unwrap().to_binary_string(), "0001");
    }

    #[test]
    fn constants_classify_as_zero() {
        for value in [false, true] {
            let f = TruthTable::constant(3, value).unwrap();
            let d = decompose(&f);
            assert_eq!(d.classification(), Classification { m: 0, k: 0, r: 0 });
            assert_eq!(d.core, Core::Constant(value));
            assert_eq!(reconstruct(&d).unwrap(), f);
        }
    }

    #[test]
    fn xor_on_two_of_three_variables() {
        let f = &var(3, 0) ^ &var(3, 2);
        assert_eq!(classify(&f), Classification { m: 2, k: 0, r: 0 });
        let d = decompose(&f);
        assert!(matches!(&d.core, Core::Function { vars, .. } if vars == &vec![0, 2]));
    }

    #[test]
    fn literal_is_bidirectional() {
        let d = decompose(&var(1, 0));
        assert_eq!(d.classification(), Classification { m: 1, k: 1, r: 1 });
        let lit = d.layers[0][0];
        assert!(lit.bidirectional);
        assert!(!lit.input);
        assert_eq!(d.outputs, vec![false]);
        assert_eq!(d.core, Core::Constant(true));
    }

    #[test]
    fn two_layer_function() {
        // x1 OR (x2 AND x3): layer {x1} -> 1, then {x2, x3} -> 0, core 1
        let x = |v| var(3, v);
        let f = &x(0) | &(&x(1) & &x(2));
        let d = decompose(&f);
        assert_eq!(d.layer_sizes(), vec![1, 2]);
        assert_eq!(d.outputs, vec![true, false]);
        assert_eq!(reconstruct(&d).unwrap(), f);
    }

    #[test]
    fn reconstruct_rejects_invalid_forms() {
        let base = decompose(&(&var(3, 0) | &(&var(3, 1) & &var(3, 2))));

        let mut d = base.clone();
        d.outputs[1] = true;
        assert_eq!(reconstruct(&d), Err(DecompositionError::NonAlternatingOutputs(1)));

        let mut d = base.clone();
        d.layers.push(vec![]);
        d.outputs.push(true);
        assert_eq!(reconstruct(&d), Err(DecompositionError::EmptyLayer(3)));

        let mut d = base.clone();
        d.layers[1].pop();
        d.essential = vec![0, 1];
        assert_eq!(reconstruct(&d), Err(DecompositionError::SingletonLastLayer));

        let mut d = base.clone();
        d.core = Core::Function {
            vars: vec![],
            table: TruthTable::constant(0, true).unwrap(),
        };
        assert_eq!(reconstruct(&d), Err(DecompositionError::ConstantCoreFunction));

        let mut d = base;
        d.layers[1].pop();
        d.essential = vec![0, 1, 2];
        d.core = Core::Function {
            vars: vec![2],
            table: var(1, 0),
        };
        assert_eq!(reconstruct(&d), Err(DecompositionError::CanalizingCore(2)));
    }
}
