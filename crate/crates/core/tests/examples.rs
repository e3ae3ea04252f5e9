// Runs every example so they cannot rot.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(sugihara);
example!(lex_groups);
example!(pushout);
example!(closure);
example!(decompose);
example!(subbunch);
example!(amalgamate);
example!(strong_ap);
example!(axioms);
