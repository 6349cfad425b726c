use vstd::prelude::*;

verus! {

fn test_transfer() {
    let mut ledger = Ledger::new(100, 50);
    assert(ledger.total() == 150);
    let ok = ledger.move_to_savings(30);
    assert(ok);
    assert(ledger.total() == 150);
    let too_much = ledger.move_to_savings(1000);
    assert(!too_much);
    assert(ledger.total() == 150);
}

fn main() {
    test_transfer();
}

} // verus!
