use vstd::prelude::*;

verus! {

fn test_insert_get() {
    let mut tm = TreeMap::new();
    tm.insert(5, 50);
    tm.insert(2, 20);
    tm.insert(8, 80);
    assert(tm.get(5) == Some(50u64));
    assert(tm.get(2) == Some(20u64));
    assert(tm.get(9) == None::<u64>);
}

fn test_contains() {
    let mut tm = TreeMap::new();
    tm.insert(1, 10);
    assert(tm.contains_key(1));
    assert(!tm.contains_key(3));
}

fn test_min_max() {
    let mut tm = TreeMap::new();
    tm.insert(4, 40);
    tm.insert(9, 90);
    tm.insert(1, 10);
    assert(tm.min_key() == Some(1u64));
    assert(tm.max_key() == Some(9u64));
}

fn test_len() {
    let mut tm = TreeMap::new();
    assert(tm.is_empty());
    tm.insert(3, 30);
    tm.insert(3, 31);
    assert(tm.len() == 1);
    tm.clear();
    assert(tm.is_empty());
}

fn test_height() {
    let mut tm = TreeMap::new();
    assert(tm.height() == 0);
    tm.insert(5, 50);
    tm.insert(2, 20);
    tm.insert(1, 10);
    assert(tm.height() == 3);
}

fn main() {
    test_insert_get();
    test_contains();
    test_min_max();
    test_len();
    test_height();
}

} // verus!
