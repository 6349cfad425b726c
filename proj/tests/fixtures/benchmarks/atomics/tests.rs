use vstd::prelude::*;

verus! {

fn test_basic() {
    let mut c = AtomicCounter::new(10);
    assert(c.get() == 0);
    let ok = c.set(7);
    assert(ok);
    assert(c.get() == 7);
    c.reset();
    assert(c.get() == 0);
}

fn test_incr_decr() {
    let mut c = AtomicCounter::new(2);
    let up = c.incr();
    assert(up);
    assert(c.get() == 1);
    let down = c.decr();
    assert(down);
    assert(c.get() == 0);
    let under = c.decr();
    assert(!under);
}

fn test_add() {
    let mut c = AtomicCounter::new(10);
    let ok = c.add(4);
    assert(ok);
    assert(c.get() == 4);
    let over = c.add(100);
    assert(!over);
    assert(c.get() == 4);
}

fn main() {
    test_basic();
    test_incr_decr();
    test_add();
}

} // verus!
