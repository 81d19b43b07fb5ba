pub mod qsim;
