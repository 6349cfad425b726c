use vstd::prelude::*;

verus! {

pub struct AtomicCounter {
    value: u64,
    limit: u64,
}

impl AtomicCounter {
    pub fn new(limit: u64) -> AtomicCounter {
        AtomicCounter { value: 0, limit }
    }

    pub fn get(&self) -> u64 {
        self.value
    }

    pub fn set(&mut self, v: u64) -> bool {
        if v <= self.limit {
            self.value = v;
            true
        } else {
            false
        }
    }

    pub fn incr(&mut self) -> bool {
        if self.value < self.limit {
            self.value = self.value + 1;
            true
        } else {
            false
        }
    }

    pub fn decr(&mut self) -> bool {
        if self.value > 0 {
            self.value = self.value - 1;
            true
        } else {
            false
        }
    }

    pub fn add(&mut self, n: u64) -> bool {
        if n <= self.limit && self.value <= self.limit - n {
            self.value = self.value + n;
            true
        } else {
            false
        }
    }

    pub fn reset(&mut self) {
        self.value = 0;
    }
}

} // verus!
