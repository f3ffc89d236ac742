public class House{
    public class Bedroom{
        public class Attachedwashroom extends
            Bedroom{
        }
    }
}
public class Bedroom{
}
