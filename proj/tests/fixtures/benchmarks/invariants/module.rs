use vstd::prelude::*;

verus! {

pub struct BoundedCell {
    value: u32,
    lo: u32,
    hi: u32,
}

impl BoundedCell {
    pub fn new(lo: u32, hi: u32) -> BoundedCell {
        BoundedCell { value: lo, lo, hi }
    }

    pub fn read(&self) -> u32 {
        self.value
    }

    pub fn write(&mut self, v: u32) -> bool {
        if self.lo <= v && v <= self.hi {
            self.value = v;
            true
        } else {
            false
        }
    }

    pub fn widen(&mut self, new_hi: u32) -> bool {
        if new_hi >= self.hi {
            self.hi = new_hi;
            true
        } else {
            false
        }
    }
}

} // verus!
