use vstd::prelude::*;

verus! {

fn test_push_pop() {
    let mut v = IntVec::new();
    assert(v.is_empty());
    v.push(3);
    v.push(7);
    assert(v.len() == 2);
    let top = v.pop();
    assert(top == Some(7i64));
    assert(v.len() == 1);
}

fn test_get_set() {
    let mut v = IntVec::new();
    v.push(1);
    v.push(2);
    v.set(0, 9);
    assert(v.get(0) == 9);
    assert(v.get(1) == 2);
}

fn test_search() {
    let mut v = IntVec::new();
    v.push(4);
    v.push(8);
    assert(v.contains(8));
    assert(!v.contains(5));
    assert(v.index_of(4) == Some(0usize));
    assert(v.index_of(99) == None::<usize>);
}

fn test_min_max() {
    let mut v = IntVec::new();
    assert(v.min_value() == None::<i64>);
    v.push(6);
    v.push(-2);
    v.push(11);
    assert(v.min_value() == Some(-2i64));
    assert(v.max_value() == Some(11i64));
}

fn main() {
    test_push_pop();
    test_get_set();
    test_search();
    test_min_max();
}

} // verus!
