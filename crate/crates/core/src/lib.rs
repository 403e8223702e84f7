pub mod algebraic;
pub mod analysis;
pub mod binet;
pub mod bound_chain;
pub mod error;
pub mod factor;
pub mod interval;
pub mod linear_forms;
pub mod numfield;
pub mod places;
pub mod poly;
pub mod recurrence;
pub mod roots;
pub mod rootsys;
pub mod search;
pub mod solve;

#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/recurrences.md")]
    pub mod recurrences {}
    #[doc = include_str!("../../../book/src/intervals.md")]
    pub mod intervals {}
    #[doc = include_str!("../../../book/src/independence.md")]
    pub mod independence {}
    #[doc = include_str!("../../../book/src/linear_forms.md")]
    pub mod linear_forms {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    pub mod bounds {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
