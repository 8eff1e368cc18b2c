pub mod compare;
pub mod mc;
pub mod mu;
pub mod pb;
pub mod pd;
pub mod product;
pub mod reproduce;
pub mod search;
pub mod selfdual;
pub mod validate;
