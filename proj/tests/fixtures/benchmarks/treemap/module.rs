use vstd::prelude::*;

verus! {

pub struct MapNode {
    key: u64,
    value: u64,
    left: Option<Box<MapNode>>,
    right: Option<Box<MapNode>>,
}

pub struct TreeMap {
    root: Option<Box<MapNode>>,
    count: usize,
}

impl TreeMap {
    pub fn new() -> TreeMap {
        TreeMap { root: None, count: 0 }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn clear(&mut self) {
        self.root = None;
        self.count = 0;
    }

    fn insert_node(node: &mut Option<Box<MapNode>>, key: u64, value: u64) -> bool {
        match node {
            None => {
                *node = Some(Box::new(MapNode { key, value, left: None, right: None }));
                true
            }
            Some(n) => {
                if key < n.key {
                    TreeMap::insert_node(&mut n.left, key, value)
                } else if key > n.key {
                    TreeMap::insert_node(&mut n.right, key, value)
                } else {
                    n.value = value;
                    false
                }
            }
        }
    }

    pub fn insert(&mut self, key: u64, value: u64) {
        if TreeMap::insert_node(&mut self.root, key, value) {
            self.count = self.count + 1;
        }
    }

    fn get_node(node: &Option<Box<MapNode>>, key: u64) -> Option<u64> {
        match node {
            None => None,
            Some(n) => {
                if key < n.key {
                    TreeMap::get_node(&n.left, key)
                } else if key > n.key {
                    TreeMap::get_node(&n.right, key)
                } else {
                    Some(n.value)
                }
            }
        }
    }

    pub fn get(&self, key: u64) -> Option<u64> {
        TreeMap::get_node(&self.root, key)
    }

    pub fn contains_key(&self, key: u64) -> bool {
        match TreeMap::get_node(&self.root, key) {
            Some(_) => true,
            None => false,
        }
    }

    fn min_node(node: &Option<Box<MapNode>>) -> Option<u64> {
        match node {
            None => None,
            Some(n) => {
                match TreeMap::min_node(&n.left) {
                    Some(k) => Some(k),
                    None => Some(n.key),
                }
            }
        }
    }

    pub fn min_key(&self) -> Option<u64> {
        TreeMap::min_node(&self.root)
    }

    fn max_node(node: &Option<Box<MapNode>>) -> Option<u64> {
        match node {
            None => None,
            Some(n) => {
                match TreeMap::max_node(&n.right) {
                    Some(k) => Some(k),
                    None => Some(n.key),
                }
            }
        }
    }

    pub fn max_key(&self) -> Option<u64> {
        TreeMap::max_node(&self.root)
    }

    fn height_node(node: &Option<Box<MapNode>>) -> usize {
        match node {
            None => 0,
            Some(n) => {
                let lh = TreeMap::height_node(&n.left);
                let rh = TreeMap::height_node(&n.right);
                if lh > rh { lh + 1 } else { rh + 1 }
            }
        }
    }

    pub fn height(&self) -> usize {
        TreeMap::height_node(&self.root)
    }
}

} // verus!
