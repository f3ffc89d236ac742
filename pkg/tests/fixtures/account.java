public class Account{
    //...code implementation
}
