//! Empty library target; the content of this crate lives in `benches/`.
