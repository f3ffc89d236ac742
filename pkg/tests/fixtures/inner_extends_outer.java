class TestIn1 {
    private void doPrinting(){
        System.out.println("TestIn1");
    }

    class TestIn2 extends TestIn1 {
        void call(){
            doPrinting();
        }
    }
}
