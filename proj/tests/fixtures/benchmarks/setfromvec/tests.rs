use vstd::prelude::*;

verus! {

fn test_insert_contains() {
    let mut s = VecSet::new();
    assert(s.is_empty());
    let fresh = s.insert(4);
    assert(fresh);
    assert(s.contains(4));
    let dup = s.insert(4);
    assert(!dup);
    assert(s.len() == 1);
}

fn test_remove() {
    let mut s = VecSet::new();
    let _ = s.insert(1);
    let _ = s.insert(2);
    let gone = s.remove(1);
    assert(gone);
    assert(!s.contains(1));
    assert(s.contains(2));
    assert(s.len() == 1);
}

fn test_missing() {
    let mut s = VecSet::new();
    let gone = s.remove(9);
    assert(!gone);
    assert(!s.contains(9));
}

fn main() {
    test_insert_contains();
    test_remove();
    test_missing();
}

} // verus!
