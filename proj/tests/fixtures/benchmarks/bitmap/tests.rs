use vstd::prelude::*;

verus! {

fn test_set_get() {
    let mut bm = Bitmap::new(2);
    assert(bm.capacity() == 128);
    assert(!bm.get(3));
    bm.set(3);
    assert(bm.get(3));
    bm.clear_bit(3);
    assert(!bm.get(3));
}

fn test_toggle_count() {
    let mut bm = Bitmap::new(1);
    bm.toggle(0);
    bm.toggle(63);
    assert(bm.count_ones() == 2);
    bm.toggle(0);
    assert(bm.count_ones() == 1);
}

fn test_clear_all() {
    let mut bm = Bitmap::new(2);
    bm.set(1);
    bm.set(100);
    assert(!bm.is_all_clear());
    bm.clear_all();
    assert(bm.is_all_clear());
    assert(bm.count_ones() == 0);
}

fn main() {
    test_set_get();
    test_toggle_count();
    test_clear_all();
}

} // verus!
