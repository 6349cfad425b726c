use vstd::prelude::*;

verus! {

pub struct VecSet {
    items: Vec<u64>,
}

impl VecSet {
    pub fn new() -> VecSet {
        VecSet { items: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.len() == 0
    }

    pub fn contains(&self, x: u64) -> bool {
        let mut i: usize = 0;
        while i < self.items.len() {
            if self.items[i] == x {
                return true;
            }
            i = i + 1;
        }
        false
    }

    pub fn insert(&mut self, x: u64) -> bool {
        if self.contains(x) {
            false
        } else {
            self.items.push(x);
            true
        }
    }

    pub fn remove(&mut self, x: u64) -> bool {
        let mut i: usize = 0;
        while i < self.items.len() {
            if self.items[i] == x {
                let last = self.items.len() - 1;
                let moved = self.items[last];
                self.items.set(i, moved);
                self.items.pop();
                return true;
            }
            i = i + 1;
        }
        false
    }
}

} // verus!
