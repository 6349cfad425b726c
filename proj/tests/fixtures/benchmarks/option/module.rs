use vstd::prelude::*;

verus! {

pub struct OptionCell<T: Copy> {
    present: bool,
    slot: T,
}

impl<T: Copy> OptionCell<T> {
    pub fn new_none(default: T) -> OptionCell<T> {
        OptionCell { present: false, slot: default }
    }

    pub fn new_some(value: T) -> OptionCell<T> {
        OptionCell { present: true, slot: value }
    }

    pub fn is_some(&self) -> bool {
        self.present
    }

    pub fn is_none(&self) -> bool {
        !self.present
    }

    pub fn unwrap_or(&self, fallback: T) -> T {
        if self.present {
            self.slot
        } else {
            fallback
        }
    }

    pub fn get(&self) -> Option<T> {
        if self.present {
            Some(self.slot)
        } else {
            None
        }
    }

    pub fn set(&mut self, value: T) {
        self.present = true;
        self.slot = value;
    }

    pub fn clear(&mut self) {
        self.present = false;
    }

    pub fn replace(&mut self, value: T) -> Option<T> {
        let old_value = self.get();
        self.set(value);
        old_value
    }

    pub fn take_value(&mut self) -> Option<T> {
        let old_value = self.get();
        self.clear();
        old_value
    }

    pub fn swap(&mut self, other: &mut OptionCell<T>) {
        let mine = self.present;
        let mine_slot = self.slot;
        self.present = other.present;
        self.slot = other.slot;
        other.present = mine;
        other.slot = mine_slot;
    }
}

} // verus!
