use vstd::prelude::*;

verus! {

pub struct RwRegister {
    value: u64,
    readers: usize,
    writing: bool,
}

impl RwRegister {
    pub fn new(value: u64) -> RwRegister {
        RwRegister { value, readers: 0, writing: false }
    }

    pub fn read(&mut self) -> u64 {
        self.readers = self.readers + 1;
        let v = self.value;
        self.readers = self.readers - 1;
        v
    }

    pub fn write(&mut self, v: u64) -> bool {
        if self.readers == 0 && !self.writing {
            self.writing = true;
            self.value = v;
            self.writing = false;
            true
        } else {
            false
        }
    }
}

} // verus!
