use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::ArithError;

/// Names of the indeterminates a polynomial lives over.
///
/// Exponent vectors are laid out as `[x_1..x_n, u?, y_1..y_t]`: the
/// variables first, then the optional auxiliary variable, then the
/// parameters. Keeping the variables in front makes the block order
/// "variables before everything else" a prefix split of the exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    vars: Vec<String>,
    aux: Option<String>,
    params: Vec<String>,
}

impl VarContext {
    pub fn new(params: &[&str], vars: &[&str]) -> Result<Arc<Self>, ArithError> {
        Self::build(
            params.iter().map(|s| s.to_string()).collect(),
            vars.iter().map(|s| s.to_string()).collect(),
            None,
        )
    }

    pub fn build(
        params: Vec<String>,
        vars: Vec<String>,
        aux: Option<String>,
    ) -> Result<Arc<Self>, ArithError> {
        let mut seen = HashSet::new();
        for name in vars.iter().chain(aux.iter()).chain(params.iter()) {
            if !is_identifier(name) {
                return Err(ArithError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(ArithError::DuplicateName(name.clone()));
            }
        }
        Ok(Arc::new(VarContext { vars, aux, params }))
    }

    /// A context over the parameters only.
    pub fn params_only(&self) -> Arc<VarContext> {
        Arc::new(VarContext { vars: Vec::new(), aux: None, params: self.params.clone() })
    }

    /// The context left after every parameter has been substituted.
    pub fn without_params(&self) -> Arc<VarContext> {
        Arc::new(VarContext { vars: self.vars.clone(), aux: self.aux.clone(), params: Vec::new() })
    }

    /// Same variables and parameters plus an auxiliary variable.
    pub fn with_aux(&self, aux: &str) -> Result<Arc<VarContext>, ArithError> {
        Self::build(self.params.clone(), self.vars.clone(), Some(aux.to_string()))
    }

    /// Drops the auxiliary variable.
    pub fn without_aux(&self) -> Arc<VarContext> {
        Arc::new(VarContext { vars: self.vars.clone(), aux: None, params: self.params.clone() })
    }

    /// Reorders the variables; `perm[k]` is the old index of the new k-th variable.
    pub fn permute_vars(&self, perm: &[usize]) -> Arc<VarContext> {
        let vars = perm.iter().map(|&i| self.vars[i].clone()).collect();
        Arc::new(VarContext { vars, aux: self.aux.clone(), params: self.params.clone() })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn has_aux(&self) -> bool {
        self.aux.is_some()
    }

    /// Total number of indeterminates.
    pub fn len(&self) -> usize {
        self.vars.len() + self.aux.is_some() as usize + self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn var_index(&self, i: usize) -> usize {
        debug_assert!(i < self.vars.len());
        i
    }

    pub fn aux_index(&self) -> Option<usize> {
        self.aux.as_ref().map(|_| self.vars.len())
    }

    pub fn param_index(&self, i: usize) -> usize {
        debug_assert!(i < self.params.len());
        self.first_param() + i
    }

    /// Layout index of `y_1`.
    pub fn first_param(&self) -> usize {
        self.vars.len() + self.aux.is_some() as usize
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn aux(&self) -> Option<&str> {
        self.aux.as_deref()
    }

    /// Name at a layout index.
    pub fn name(&self, idx: usize) -> &str {
        let n = self.vars.len();
        if idx < n {
            &self.vars[idx]
        } else if self.aux.is_some() && idx == n {
            self.aux.as_deref().unwrap()
        } else {
            &self.params[idx - self.first_param()]
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.name(i) == name)
    }
}

impl fmt::Display for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "params [{}] vars [{}]", self.params.join(" "), self.vars.join(" "))?;
        if let Some(a) = &self.aux {
            write!(f, " aux {a}")?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let ctx = VarContext::new(&["y1", "y2", "y3"], &["x1", "x2"]).unwrap();
        assert_eq!(ctx.len(), 5);
        assert_eq!(ctx.param_index(0), 2);
        assert_eq!(ctx.index_of("y3"), Some(4));
        let with_u = ctx.with_aux("u").unwrap();
        assert_eq!(with_u.aux_index(), Some(2));
        assert_eq!(with_u.param_index(0), 3);
        assert_eq!(with_u.name(2), "u");
    }

    #[test]
    fn rejects_duplicates() {
        assert!(VarContext::new(&["y", "x"], &["x"]).is_err());
        assert!(VarContext::new(&["1y"], &["x"]).is_err());
    }
}
