use vstd::prelude::*;

verus! {

fn test_register() {
    let mut reg = RwRegister::new(11);
    assert(reg.read() == 11);
    let ok = reg.write(23);
    assert(ok);
    assert(reg.read() == 23);
    let again = reg.write(5);
    assert(again);
    assert(reg.read() == 5);
}

fn main() {
    test_register();
}

} // verus!
