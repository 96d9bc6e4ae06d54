use octobil::restriction::{format_newnbl_table, newnbl_table};

fn main() {
    let rows = newnbl_table().unwrap();
    print!("{}", format_newnbl_table(&rows));
}
