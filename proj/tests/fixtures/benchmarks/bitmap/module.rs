use vstd::prelude::*;

verus! {

pub struct Bitmap {
    words: Vec<u64>,
    nbits: usize,
}

impl Bitmap {
    pub fn new(nwords: usize) -> Bitmap {
        let mut words: Vec<u64> = Vec::new();
        let mut i: usize = 0;
        while i < nwords {
            words.push(0);
            i = i + 1;
        }
        Bitmap { nbits: nwords * 64, words }
    }

    pub fn capacity(&self) -> usize {
        self.nbits
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    pub fn get(&self, idx: usize) -> bool {
        let word = self.words[idx / 64];
        (word >> (idx % 64)) & 1 == 1
    }

    pub fn set(&mut self, idx: usize) {
        let word = self.words[idx / 64];
        self.words.set(idx / 64, word | (1u64 << (idx % 64)));
    }

    pub fn clear_bit(&mut self, idx: usize) {
        let word = self.words[idx / 64];
        self.words.set(idx / 64, word & !(1u64 << (idx % 64)));
    }

    pub fn toggle(&mut self, idx: usize) {
        let word = self.words[idx / 64];
        self.words.set(idx / 64, word ^ (1u64 << (idx % 64)));
    }

    pub fn count_ones(&self) -> usize {
        let mut total: usize = 0;
        let mut i: usize = 0;
        while i < self.nbits {
            if self.get(i) {
                total = total + 1;
            }
            i = i + 1;
        }
        total
    }

    pub fn is_all_clear(&self) -> bool {
        let mut i: usize = 0;
        while i < self.words.len() {
            if self.words[i] != 0 {
                return false;
            }
            i = i + 1;
        }
        true
    }

    pub fn clear_all(&mut self) {
        let mut i: usize = 0;
        while i < self.words.len() {
            self.words.set(i, 0);
            i = i + 1;
        }
    }
}

} // verus!
