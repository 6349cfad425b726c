use vstd::prelude::*;

verus! {

pub struct IntVec {
    data: Vec<i64>,
}

impl IntVec {
    pub fn new() -> IntVec {
        IntVec { data: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.len() == 0
    }

    pub fn push(&mut self, x: i64) {
        self.data.push(x);
    }

    pub fn pop(&mut self) -> Option<i64> {
        if self.data.len() == 0 {
            None
        } else {
            let x = self.data[self.data.len() - 1];
            self.data.pop();
            Some(x)
        }
    }

    pub fn get(&self, i: usize) -> i64 {
        self.data[i]
    }

    pub fn set(&mut self, i: usize, x: i64) {
        self.data.set(i, x);
    }

    pub fn contains(&self, x: i64) -> bool {
        let mut i: usize = 0;
        while i < self.data.len() {
            if self.data[i] == x {
                return true;
            }
            i = i + 1;
        }
        false
    }

    pub fn index_of(&self, x: i64) -> Option<usize> {
        let mut i: usize = 0;
        while i < self.data.len() {
            if self.data[i] == x {
                return Some(i);
            }
            i = i + 1;
        }
        None
    }

    pub fn min_value(&self) -> Option<i64> {
        if self.data.len() == 0 {
            return None;
        }
        let mut best = self.data[0];
        let mut i: usize = 1;
        while i < self.data.len() {
            if self.data[i] < best {
                best = self.data[i];
            }
            i = i + 1;
        }
        Some(best)
    }

    pub fn max_value(&self) -> Option<i64> {
        if self.data.len() == 0 {
            return None;
        }
        let mut best = self.data[0];
        let mut i: usize = 1;
        while i < self.data.len() {
            if self.data[i] > best {
                best = self.data[i];
            }
            i = i + 1;
        }
        Some(best)
    }
}

} // verus!
