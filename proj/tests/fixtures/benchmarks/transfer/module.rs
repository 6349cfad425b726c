use vstd::prelude::*;

verus! {

pub struct Ledger {
    checking: u64,
    savings: u64,
}

impl Ledger {
    pub fn new(checking: u64, savings: u64) -> Ledger {
        Ledger { checking, savings }
    }

    pub fn total(&self) -> u64 {
        self.checking + self.savings
    }

    pub fn move_to_savings(&mut self, amount: u64) -> bool {
        if amount <= self.checking && self.savings <= u64::MAX - amount {
            self.checking = self.checking - amount;
            self.savings = self.savings + amount;
            true
        } else {
            false
        }
    }
}

} // verus!
