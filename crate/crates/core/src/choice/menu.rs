use crate::{Error, PayoffStream, Result};

/// A finite set of distinct projects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Menu(Vec<PayoffStream>);

impl Menu {
    /// Rejects empty menus and projects that coincide up to trailing zeros.
    pub fn new(projects: Vec<PayoffStream>) -> Result<Self> {
        if projects.is_empty() {
            return Err(Error::EmptyMenu);
        }
        for i in 0..projects.len() {
            for j in i + 1..projects.len() {
                if projects[i].same_project(&projects[j]) {
                    return Err(Error::DuplicateProject(i, j));
                }
            }
        }
        Ok(Menu(projects))
    }

    pub fn projects(&self) -> &[PayoffStream] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, x: &PayoffStream) -> Option<usize> {
        self.0.iter().position(|y| y.same_project(x))
    }

    /// The menu with `z` appended.
    pub fn with(&self, z: PayoffStream) -> Result<Menu> {
        let mut projects = self.0.clone();
        projects.push(z);
        Menu::new(projects)
    }

    pub(crate) fn subset(&self, indices: &[usize]) -> Menu {
        Menu(indices.iter().map(|&i| self.0[i].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    #[test]
    fn duplicates_are_rejected() {
        let a = PayoffStream::new(vec![int(1), int(0)]).unwrap();
        let b = PayoffStream::new(vec![int(1)]).unwrap();
        assert_eq!(Menu::new(vec![a, b]), Err(Error::DuplicateProject(0, 1)));
        assert_eq!(Menu::new(vec![]), Err(Error::EmptyMenu));
    }
}
