use vstd::prelude::*;

verus! {

fn test_leaf() {
    let node = TreeNode::new(7);
    assert(node.value() == 7);
    assert(!node.has_left());
    assert(!node.has_right());
    assert(node.size() == 1);
}

fn test_children() {
    let mut node = TreeNode::new(5);
    node.insert_left(3);
    node.insert_right(9);
    assert(node.has_left());
    assert(node.has_right());
    assert(node.size() == 3);
}

fn test_set_value() {
    let mut node = TreeNode::new(1);
    node.set_value(42);
    assert(node.value() == 42);
}

fn main() {
    test_leaf();
    test_children();
    test_set_value();
}

} // verus!
