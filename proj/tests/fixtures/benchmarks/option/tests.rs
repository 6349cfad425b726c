use vstd::prelude::*;

verus! {

fn test_presence() {
    let cell: OptionCell<u32> = OptionCell::new_none(0);
    assert(cell.is_none());
    assert(!cell.is_some());
    let full = OptionCell::new_some(3u32);
    assert(full.is_some());
    assert(full.unwrap_or(9) == 3);
    assert(cell.unwrap_or(9) == 9);
}

fn test_mutation() {
    let mut cell: OptionCell<u32> = OptionCell::new_none(0);
    cell.set(5);
    assert(cell.is_some());
    let prev = cell.replace(8);
    assert(prev == Some(5u32));
    let taken = cell.take_value();
    assert(taken == Some(8u32));
    assert(cell.is_none());
}

fn test_swap() {
    let mut a = OptionCell::new_some(1u32);
    let mut b: OptionCell<u32> = OptionCell::new_none(0);
    a.swap(&mut b);
    assert(a.is_none());
    assert(b.is_some());
    assert(b.unwrap_or(0) == 1);
}

fn main() {
    test_presence();
    test_mutation();
    test_swap();
}

} // verus!
