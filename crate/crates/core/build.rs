fn main() {
    // system OpenBLAS provides BLAS, CBLAS and LAPACK in one library;
    // the requirement propagates through the rlib to every downstream link
    println!("cargo:rustc-link-lib=dylib=openblas");
}
