use vstd::prelude::*;

verus! {

pub struct TreeNode {
    value: i64,
    left: Option<Box<TreeNode>>,
    right: Option<Box<TreeNode>>,
}

impl TreeNode {
    pub fn new(value: i64) -> TreeNode {
        TreeNode { value, left: None, right: None }
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn set_value(&mut self, value: i64) {
        self.value = value;
    }

    pub fn has_left(&self) -> bool {
        match &self.left {
            Some(_) => true,
            None => false,
        }
    }

    pub fn has_right(&self) -> bool {
        match &self.right {
            Some(_) => true,
            None => false,
        }
    }

    pub fn insert_left(&mut self, value: i64) {
        self.left = Some(Box::new(TreeNode::new(value)));
    }

    pub fn insert_right(&mut self, value: i64) {
        self.right = Some(Box::new(TreeNode::new(value)));
    }

    pub fn size(&self) -> usize {
        let mut total: usize = 1;
        match &self.left {
            Some(l) => {
                total = total + l.size();
            }
            None => {}
        }
        match &self.right {
            Some(r) => {
                total = total + r.size();
            }
            None => {}
        }
        total
    }
}

} // verus!
