use vstd::prelude::*;

verus! {

fn test_cell_write() {
    let mut cell = BoundedCell::new(2, 9);
    assert(cell.read() == 2);
    let ok = cell.write(5);
    assert(ok);
    assert(cell.read() == 5);
    let bad = cell.write(100);
    assert(!bad);
    assert(cell.read() == 5);
}

fn test_cell_widen() {
    let mut cell = BoundedCell::new(0, 3);
    let grew = cell.widen(20);
    assert(grew);
    let ok = cell.write(15);
    assert(ok);
    assert(cell.read() == 15);
}

fn main() {
    test_cell_write();
    test_cell_widen();
}

} // verus!
