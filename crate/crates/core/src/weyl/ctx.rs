use std::fmt;
use std::sync::Arc;

/// Ordered variable names of a polynomial ring. Contexts compare by names.
#[derive(Clone)]
pub struct VarCtx(Arc<Vec<String>>);

impl VarCtx {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        VarCtx(Arc::new(
            names.iter().map(|s| s.as_ref().to_string()).collect(),
        ))
    }

    /// `prefix_1, ..., prefix_n`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        VarCtx(Arc::new((1..=n).map(|i| format!("{prefix}_{i}")).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// The dual context: `z...` becomes `zeta...` and back. Pairing is by index.
    pub fn dual(&self) -> VarCtx {
        VarCtx(Arc::new(
            self.0
                .iter()
                .map(|n| {
                    if let Some(r) = n.strip_prefix("zeta") {
                        format!("z{r}")
                    } else if let Some(r) = n.strip_prefix('z') {
                        format!("zeta{r}")
                    } else {
                        format!("{n}^")
                    }
                })
                .collect(),
        ))
    }

    /// LaTeX rendering of variable `i`.
    pub fn latex_name(&self, i: usize) -> String {
        latex_var(&self.0[i])
    }
}

pub(crate) fn latex_var(n: &str) -> String {
    let (head, tail) = match n.split_once('_') {
        Some((h, t)) => (h, Some(t)),
        None => (n, None),
    };
    let head = match head.strip_prefix("zeta") {
        Some(r) => format!("\\zeta{r}"),
        None => head.to_string(),
    };
    match tail {
        Some(t) => format!("{head}_{{{t}}}"),
        None => head,
    }
}

impl PartialEq for VarCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for VarCtx {}

impl fmt::Debug for VarCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
