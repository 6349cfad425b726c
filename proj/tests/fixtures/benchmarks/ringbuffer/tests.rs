use vstd::prelude::*;

verus! {

fn test_new_empty() {
    let ring: Vec<u64> = vec![0, 0, 0, 0];
    let rb = RingBuffer::new(ring);
    assert(rb.is_empty());
    assert(rb.capacity() == 4);
}

fn test_enqueue_dequeue() {
    let ring: Vec<u64> = vec![0, 0, 0, 0];
    let mut rb = RingBuffer::new(ring);
    let ok = rb.enqueue(5);
    assert(ok);
    let front = rb.peek();
    assert(front == Some(5u64));
    let got = rb.dequeue();
    assert(got == Some(5u64));
    assert(rb.is_empty());
}

fn test_wraparound() {
    let ring: Vec<u64> = vec![0, 0, 0];
    let mut rb = RingBuffer::new(ring);
    let _ = rb.enqueue(1);
    let _ = rb.enqueue(2);
    assert(rb.is_full());
    let got = rb.dequeue();
    assert(got == Some(1u64));
    let ok = rb.enqueue(3);
    assert(ok);
    rb.clear();
    assert(rb.is_empty());
}

fn main() {
    test_new_empty();
    test_enqueue_dequeue();
    test_wraparound();
}

} // verus!
